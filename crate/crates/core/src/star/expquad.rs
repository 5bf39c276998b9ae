use crate::error::{Error, Result};
use crate::phase::{factorial, PhasePoly, Var};
use crate::scalar::{GaussianRational, Scalar};

use super::is_hermitian;

/// `prefactor · exp(exponent)` with an exponent of total (x,p)-degree ≤ 2.
#[derive(Clone, PartialEq, Debug)]
pub struct ExpQuadForm<C> {
    prefactor: PhasePoly<C>,
    exponent: PhasePoly<C>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// `A ⋆ E`
    Left,
    /// `E ⋆ A`
    Right,
}

impl<C: Scalar> ExpQuadForm<C> {
    /// Rejects exponents with a monomial of (x,p)-degree above 2 or a negative
    /// power of `p`.
    pub fn new(prefactor: PhasePoly<C>, exponent: PhasePoly<C>) -> Result<Self> {
        for (m, _) in exponent.terms() {
            if m.p < 0 || m.x as i64 + m.p as i64 > 2 {
                return Err(Error::ExponentNotQuadratic);
            }
        }
        Ok(Self { prefactor, exponent })
    }

    /// `exp(exponent)` with unit prefactor.
    pub fn exp(exponent: PhasePoly<C>) -> Result<Self> {
        Self::new(PhasePoly::one(), exponent)
    }

    pub fn prefactor(&self) -> &PhasePoly<C> {
        &self.prefactor
    }

    pub fn exponent(&self) -> &PhasePoly<C> {
        &self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    /// Same exponent, prefactor replaced.
    pub fn with_prefactor(&self, prefactor: PhasePoly<C>) -> Self {
        Self { prefactor, exponent: self.exponent.clone() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.exponent != other.exponent {
            return Err(Error::InvalidInput("exponential forms with different exponents".into()));
        }
        Ok(self.with_prefactor(&self.prefactor - &other.prefactor))
    }

    /// `f ↦ e^{-Q} ∂ (f e^{Q}) = ∂f + f ∂Q`, which keeps `f` polynomial.
    fn pull(&self, f: &PhasePoly<C>, var: Var) -> PhasePoly<C> {
        &f.derivative(var) + &(f * &self.exponent.derivative(var))
    }
}

/// `(iħ)^k / k!` as a phase-space monomial.
fn weight<C: Scalar>(k: u32) -> PhasePoly<C> {
    let ik = GaussianRational::i_pow(k as i64);
    let w = &ik * &GaussianRational::from_real(num_rational::BigRational::new(1.into(), factorial(k)));
    PhasePoly::mono(w, 0, 0, k as i32)
}

/// `A ⋆ E` or `E ⋆ A` for polynomial `A`, as a form with the exponent of `E`.
pub fn star_poly_expquad<C: Scalar>(a: &PhasePoly<C>, e: &ExpQuadForm<C>, side: Side) -> Result<ExpQuadForm<C>> {
    let mut out = PhasePoly::zero();
    match side {
        Side::Left => {
            let mut dk = e.prefactor.clone();
            for k in 0..=a.max_x_degree() {
                let ak = a.nth_derivative(Var::X, k);
                if ak.is_zero() {
                    break;
                }
                out = &out + &(&(&ak * &dk) * &weight(k));
                dk = e.pull(&dk, Var::P);
            }
        }
        Side::Right => {
            if !a.is_polynomial_in_p() {
                return Err(Error::NonTerminating("right factor has negative powers of p".into()));
            }
            let kmax = a.max_p_degree().unwrap_or(0).max(0) as u32;
            let mut dk = e.prefactor.clone();
            for k in 0..=kmax {
                let ak = a.nth_derivative(Var::P, k);
                if ak.is_zero() {
                    break;
                }
                out = &out + &(&(&dk * &ak) * &weight(k));
                dk = e.pull(&dk, Var::X);
            }
        }
    }
    Ok(e.with_prefactor(out))
}

/// Hermiticity of `exp(Q)` when the product degenerates to a pointwise one.
///
/// Needs a unit prefactor and `Q` depending on `x` alone or `p` alone; for
/// anything else the answer has to come from an order-by-order check.
pub fn eqf_is_positive_hermitian<C: Scalar>(e: &ExpQuadForm<C>) -> Result<bool> {
    if !e.prefactor.is_one() {
        return Err(Error::InvalidInput("prefactor must be 1".into()));
    }
    if !e.exponent.is_x_independent() && !e.exponent.is_p_independent() {
        return Err(Error::MixedExponent);
    }
    Ok(is_hermitian(&e.exponent))
}
