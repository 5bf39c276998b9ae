//! Moyal star product, dagger map and hermiticity criterion.
//!
//! Convention: `A ⋆ B = A exp(iħ ∂x← ∂p→) B`, i.e. derivatives in `x` act on
//! the left operand and derivatives in `p` on the right one. Then
//! `x ⋆ p − p ⋆ x = +iħ`. Flipping either side flips the sign of ħ
//! everywhere below.

mod expquad;

pub use expquad::{eqf_is_positive_hermitian, star_poly_expquad, ExpQuadForm, Side};

use crate::error::{Error, Result};
use crate::phase::{factorial, falling, CouplingSeries, Monomial, PhasePoly};
use crate::scalar::{GaussianRational, Scalar};

/// `(i)^k / k!` scaled by an integer weight.
fn star_weight(k: u32, sign: i64, weight: num_bigint::BigInt) -> GaussianRational {
    let ik = GaussianRational::i_pow(k as i64 * sign.signum());
    let w = num_rational::BigRational::new(weight, factorial(k));
    &ik * &GaussianRational::from_real(w)
}

/// Moyal product; the k-sum stops at the x-degree of `a`.
pub fn star<C: Scalar>(a: &PhasePoly<C>, b: &PhasePoly<C>) -> PhasePoly<C> {
    let mut out = PhasePoly::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let prod = ca.clone() * cb.clone();
            for k in 0..=ma.x {
                let fb = falling(mb.p as i64, k);
                if num_traits::Zero::is_zero(&fb) {
                    break;
                }
                let w = star_weight(k, 1, falling(ma.x as i64, k) * fb);
                let m = Monomial::new(ma.x - k + mb.x, ma.p + mb.p - k as i32, ma.hbar + mb.hbar + k as i32);
                out.add_term(m, prod.mul_gaussian(&w));
            }
        }
    }
    out
}

/// `exp(sign · iħ ∂x ∂p) A`, finite because the x-degree is.
pub fn twist<C: Scalar>(a: &PhasePoly<C>, sign: i64) -> PhasePoly<C> {
    let mut out = PhasePoly::zero();
    for (m, c) in a.terms() {
        for k in 0..=m.x {
            let fp = falling(m.p as i64, k);
            if num_traits::Zero::is_zero(&fp) {
                break;
            }
            let w = star_weight(k, sign, falling(m.x as i64, k) * fp);
            out.add_term(Monomial::new(m.x - k, m.p - k as i32, m.hbar + k as i32), c.mul_gaussian(&w));
        }
    }
    out
}

/// Function of the adjoint operator: `A† = exp(iħ ∂x∂p) A*`.
pub fn dagger<C: Scalar>(a: &PhasePoly<C>) -> PhasePoly<C> {
    twist(&a.conjugate(), 1)
}

/// `A* = exp(−iħ ∂x∂p) A`, the function-level statement of `A = A†`.
pub fn is_hermitian<C: Scalar>(a: &PhasePoly<C>) -> bool {
    a.conjugate() == twist(a, -1)
}

pub fn star_commutator<C: Scalar>(a: &PhasePoly<C>, b: &PhasePoly<C>) -> PhasePoly<C> {
    &star(a, b) - &star(b, a)
}

/// `A ⋆ A ⋆ ... ⋆ A` (`n` factors, `n = 0` gives 1).
pub fn star_pow<C: Scalar>(a: &PhasePoly<C>, n: u32) -> PhasePoly<C> {
    let mut acc = PhasePoly::one();
    for _ in 0..n {
        acc = star(&acc, a);
    }
    acc
}

/// Cauchy product of series with `⋆` between coefficients.
pub fn star_series<C: Scalar>(a: &CouplingSeries<C>, b: &CouplingSeries<C>) -> Result<CouplingSeries<C>> {
    a.cauchy(b, star)
}

/// Coefficientwise dagger; the coupling is real.
pub fn dagger_series<C: Scalar>(s: &CouplingSeries<C>) -> CouplingSeries<C> {
    s.map(dagger)
}

/// Star logarithm `Σ_{n≥1} (−1)^{n+1} (S−1)^{⋆n} / n` of a series with unit
/// constant term, truncated at the order of `S`.
pub fn star_log<C: Scalar>(s: &CouplingSeries<C>) -> Result<CouplingSeries<C>> {
    if !s.coeff(0).is_one() {
        return Err(Error::BadConstantTerm);
    }
    let k = s.order();
    let one = CouplingSeries::one(s.coupling(), k);
    let x = s.sub(&one)?;
    let mut acc = CouplingSeries::zero(s.coupling(), k);
    let mut power = x.clone();
    for n in 1..=k {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale_gaussian(&GaussianRational::ratio(sign, n as i64)))?;
        if n < k {
            power = star_series(&power, &x)?;
        }
    }
    Ok(acc)
}

/// Star exponential `Σ_n S^{⋆n} / n!` of a series with zero constant term.
pub fn star_exp<C: Scalar>(s: &CouplingSeries<C>) -> Result<CouplingSeries<C>> {
    if !s.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let k = s.order();
    let mut acc = CouplingSeries::one(s.coupling(), k);
    let mut power = CouplingSeries::one(s.coupling(), k);
    for n in 1..=k {
        power = star_series(&power, s)?.scale_gaussian(&GaussianRational::ratio(1, n as i64));
        acc = acc.add(&power)?;
    }
    Ok(acc)
}
