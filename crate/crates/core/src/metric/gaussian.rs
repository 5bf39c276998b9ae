//! Gaussian metrics `exp(r p² + s px + t x²)` for `H = a p² + b x² + i c px`.

use crate::error::{Error, Result};
use crate::phase::{CouplingSeries, ModelParams, Monomial, PhasePoly};
use crate::scalar::{GaussianRational, Scalar};
use crate::star::{star_log, ExpQuadForm};

use super::observable_residual_expquad;

fn exponent<C: Scalar>(r: &PhasePoly<C>, s: &PhasePoly<C>, t: &PhasePoly<C>) -> Result<PhasePoly<C>> {
    for f in [r, s, t] {
        if !(f.is_x_independent() && f.is_p_independent()) {
            return Err(Error::InvalidInput("r, s, t may depend on ħ only".into()));
        }
    }
    Ok(&(&r.mul_monomial(Monomial::new(0, 2, 0)) + &s.mul_monomial(Monomial::new(1, 1, 0)))
        + &t.mul_monomial(Monomial::new(2, 0, 0)))
}

/// Prefactor of the metric residual of `exp(r p² + s px + t x²)`; zero iff
/// `(r, s, t)` lies in the solution family. `r, s, t` are ħ-Laurent
/// polynomials.
pub fn gaussian_family_constraint<C: Scalar>(
    params: &ModelParams<C>,
    r: &PhasePoly<C>,
    s: &PhasePoly<C>,
    t: &PhasePoly<C>,
) -> Result<PhasePoly<C>> {
    let e = ExpQuadForm::exp(exponent(r, s, t)?)?;
    Ok(observable_residual_expquad(&params.hamiltonian(), &e)?.prefactor().clone())
}

/// The square-root-free relations that define the family.
///
/// With `D = c² − 4abħs(2i − ħs)`:
/// `identity_r = (4bħr + c)² − D`, `identity_t = (4aħt − c)² − D` and
/// `link = (4bħr + c) − (4aħt − c)`. For `a, b ≠ 0` the residual vanishes
/// iff all three do: its p² part is `−identity_r/(4b)`, its x² part is
/// `identity_t/(4a)`, its constant is `−ħ·link/2` and its px part is
/// `(i − ħs)·link`.
#[derive(Clone, PartialEq, Debug)]
pub struct FamilyRelations<C> {
    pub identity_r: PhasePoly<C>,
    pub identity_t: PhasePoly<C>,
    pub link: PhasePoly<C>,
}

impl<C: Scalar> FamilyRelations<C> {
    pub fn all_zero(&self) -> bool {
        self.identity_r.is_zero() && self.identity_t.is_zero() && self.link.is_zero()
    }
}

pub fn gaussian_family_relations<C: Scalar>(
    params: &ModelParams<C>,
    r: &PhasePoly<C>,
    s: &PhasePoly<C>,
    t: &PhasePoly<C>,
) -> FamilyRelations<C> {
    let k = |c: &C| PhasePoly::constant(c.clone());
    let n = |v: i64| PhasePoly::<C>::constant(C::from_int(v));
    let hbar = PhasePoly::<C>::hbar();
    let (a, b, c) = (k(&params.a), k(&params.b), k(&params.c));
    let two_i = PhasePoly::constant(C::from_gaussian(GaussianRational::from_int(2) * GaussianRational::i()));
    let disc = &(&c * &c) - &(&(&(&(&n(4) * &a) * &b) * &(&hbar * s)) * &(&two_i - &(&hbar * s)));
    let br = &(&(&(&n(4) * &b) * &hbar) * r) + &c;
    let at = &(&(&(&n(4) * &a) * &hbar) * t) - &c;
    FamilyRelations { identity_r: &(&br * &br) - &disc, identity_t: &(&at * &at) - &disc, link: &br - &at }
}

/// Taylor expansion in `c` of the metric fixed by the number operator as an
/// extra observable: `r = t = c/(2ħ(a−b))` and `s = (i/ħ)(1 − √(1 − c²/(a−b)²))`,
/// the square root taken as a binomial series.
pub fn expand_gaussian_in_coupling<C: Scalar>(a: &C, b: &C, order: usize) -> Result<CouplingSeries<C>> {
    let inv = (a.clone() - b.clone())
        .inverse()
        .ok_or_else(|| Error::DegenerateParams("a = b".into()))?;
    let mut q = vec![PhasePoly::zero(); order + 1];
    if order >= 1 {
        let n = &PhasePoly::<C>::p().pow(2) + &PhasePoly::<C>::x().pow(2);
        q[1] = n
            .mul_monomial(Monomial::new(0, 0, -1))
            .scale(&inv)
            .scale_gaussian(&GaussianRational::ratio(1, 2));
    }
    // −(i/ħ) Σ_{k≥1} C(1/2, k) (−1)^k u^{2k},  u = c/(a−b)
    let mut binom = GaussianRational::one();
    let mut inv_pow = C::one();
    for k in 1..=order / 2 {
        binom = &binom * &GaussianRational::ratio(3 - 2 * k as i64, 2 * k as i64);
        inv_pow = inv_pow * inv.clone() * inv.clone();
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let w = &(&GaussianRational::i() * &binom) * &GaussianRational::from_int(sign);
        q[2 * k] = PhasePoly::term(Monomial::new(1, 1, -1), inv_pow.mul_gaussian(&w));
    }
    CouplingSeries::new("c", q)?.exp_pointwise()
}

/// `log Θ` of the expansion above is `α(c) + β(c)(p² + x²)` with real `α`,
/// `β`, order by order.
pub fn log_linear_in_n_check<C: Scalar>(a: &C, b: &C, order: usize) -> Result<bool> {
    let log = star_log(&expand_gaussian_in_coupling(a, b, order)?)?;
    Ok(log.coeffs().iter().all(|c| linear_in_n(c)))
}

fn linear_in_n<C: Scalar>(c: &PhasePoly<C>) -> bool {
    c.terms().all(|(m, v)| {
        v.is_real()
            && match (m.x, m.p) {
                (0, 0) => true,
                (2, 0) => c.coeff_of(0, 2, m.hbar) == *v,
                (0, 2) => c.coeff_of(2, 0, m.hbar) == *v,
                _ => false,
            }
    })
}
