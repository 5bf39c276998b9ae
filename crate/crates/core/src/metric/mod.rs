//! The metric equation `H ⋆ Θ = Θ ⋆ H†` and everything built on it.

mod certify;
mod gaussian;
mod pde;
mod perturbative;

pub use certify::{certify_metric, solution_family_closure, solution_family_closure_hermitian, CertReport};
pub use gaussian::{
    expand_gaussian_in_coupling, gaussian_family_constraint, gaussian_family_relations, log_linear_in_n_check,
    FamilyRelations,
};
pub use pde::{pde_operator, PdeOperator};
pub use perturbative::{solve_perturbative, solve_perturbative_with};

use crate::error::{Error, Result};
use crate::phase::{CouplingSeries, PhasePoly};
use crate::scalar::Scalar;
use crate::star::{dagger, dagger_series, star, star_poly_expquad, star_series, ExpQuadForm, Side};

/// `H = H₀ + coupling · V`, with the perturbation kept separate.
#[derive(Clone, PartialEq, Debug)]
pub struct HamiltonianSpec<C> {
    pub h0: PhasePoly<C>,
    pub coupling: Option<Coupling<C>>,
    /// Evaluate results at `ħ = 1`.
    pub hbar_one: bool,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Coupling<C> {
    pub name: String,
    pub v: PhasePoly<C>,
}

impl<C: Scalar> HamiltonianSpec<C> {
    pub fn new(h0: PhasePoly<C>) -> Self {
        Self { h0, coupling: None, hbar_one: false }
    }

    pub fn with_coupling(h0: PhasePoly<C>, name: impl Into<String>, v: PhasePoly<C>) -> Self {
        Self { h0, coupling: Some(Coupling { name: name.into(), v }), hbar_one: false }
    }

    pub fn hbar_one(mut self) -> Self {
        self.hbar_one = true;
        self
    }

    /// The full Hamiltonian for a numeric (or symbolic) coupling value.
    pub fn total(&self, g: &C) -> PhasePoly<C> {
        match &self.coupling {
            Some(c) => &self.h0 + &c.v.scale(g),
            None => self.h0.clone(),
        }
    }

    /// The Hamiltonian as a function without a coupling slot.
    pub fn uncoupled(&self) -> Result<&PhasePoly<C>> {
        match &self.coupling {
            None => Ok(&self.h0),
            Some(c) => Err(Error::InvalidInput(format!(
                "Hamiltonian depends on coupling '{}'; use a series metric or fix the coupling",
                c.name
            ))),
        }
    }

    /// `H₀ + g V` as a series in the coupling, or `H₀` lifted to a constant
    /// series named `coupling` when there is no perturbation.
    pub fn as_series(&self, coupling: &str, order: usize) -> Result<CouplingSeries<C>> {
        match &self.coupling {
            Some(c) if c.name != coupling => Err(Error::CouplingMismatch(c.name.clone(), coupling.to_string())),
            Some(c) => Ok(CouplingSeries::linear(coupling, self.h0.clone(), c.v.clone(), order)),
            None => Ok(CouplingSeries::constant(coupling, self.h0.clone(), order)),
        }
    }

    fn finish(&self, a: PhasePoly<C>) -> PhasePoly<C> {
        if self.hbar_one {
            a.eval_hbar_one()
        } else {
            a
        }
    }
}

/// A candidate metric in one of the supported representations.
#[derive(Clone, PartialEq, Debug)]
pub enum MetricCandidate<C> {
    Poly(PhasePoly<C>),
    Series(CouplingSeries<C>),
    ExpQuad(ExpQuadForm<C>),
}

impl<C: Scalar> MetricCandidate<C> {
    pub fn is_zero(&self) -> bool {
        match self {
            Self::Poly(a) => a.is_zero(),
            Self::Series(s) => s.is_zero(),
            Self::ExpQuad(e) => e.is_zero(),
        }
    }
}

/// `A ⋆ Θ − Θ ⋆ A†` for a polynomial `Θ`.
pub fn observable_residual_poly<C: Scalar>(a: &PhasePoly<C>, theta: &PhasePoly<C>) -> PhasePoly<C> {
    &star(a, theta) - &star(theta, &dagger(a))
}

/// `A ⋆ Θ − Θ ⋆ A†` for a Gaussian-type `Θ`.
pub fn observable_residual_expquad<C: Scalar>(a: &PhasePoly<C>, theta: &ExpQuadForm<C>) -> Result<ExpQuadForm<C>> {
    let left = star_poly_expquad(a, theta, Side::Left)?;
    let right = star_poly_expquad(&dagger(a), theta, Side::Right)?;
    left.sub(&right)
}

pub fn observable_residual<C: Scalar>(a: &PhasePoly<C>, theta: &MetricCandidate<C>) -> Result<MetricCandidate<C>> {
    Ok(match theta {
        MetricCandidate::Poly(t) => MetricCandidate::Poly(observable_residual_poly(a, t)),
        MetricCandidate::Series(s) => {
            let lifted = CouplingSeries::constant(s.coupling(), a.clone(), s.order());
            MetricCandidate::Series(series_residual(&lifted, s)?)
        }
        MetricCandidate::ExpQuad(e) => MetricCandidate::ExpQuad(observable_residual_expquad(a, e)?),
    })
}

fn series_residual<C: Scalar>(h: &CouplingSeries<C>, theta: &CouplingSeries<C>) -> Result<CouplingSeries<C>> {
    star_series(h, theta)?.sub(&star_series(theta, &dagger_series(h))?)
}

/// `H ⋆ Θ − Θ ⋆ H†`; zero iff `Θ` solves the metric equation (to the
/// truncation order for series).
pub fn metric_residual<C: Scalar>(h: &HamiltonianSpec<C>, theta: &MetricCandidate<C>) -> Result<MetricCandidate<C>> {
    Ok(match theta {
        MetricCandidate::Poly(t) => MetricCandidate::Poly(h.finish(observable_residual_poly(h.uncoupled()?, t))),
        MetricCandidate::Series(s) => {
            let hs = h.as_series(s.coupling(), s.order())?;
            MetricCandidate::Series(series_residual(&hs, s)?.map(|c| h.finish(c.clone())))
        }
        MetricCandidate::ExpQuad(e) => {
            let r = observable_residual_expquad(h.uncoupled()?, e)?;
            MetricCandidate::ExpQuad(r.with_prefactor(h.finish(r.prefactor().clone())))
        }
    })
}

pub fn metric_residual_series<C: Scalar>(
    h: &HamiltonianSpec<C>,
    theta: &CouplingSeries<C>,
) -> Result<CouplingSeries<C>> {
    match metric_residual(h, &MetricCandidate::Series(theta.clone()))? {
        MetricCandidate::Series(s) => Ok(s),
        _ => unreachable!(),
    }
}
