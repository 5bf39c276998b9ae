use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase::CouplingSeries;
use crate::scalar::Scalar;
use crate::star::{dagger_series, is_hermitian, star_log, star_series};

use super::HamiltonianSpec;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CertReport {
    pub hermitian: bool,
    pub positive: bool,
    pub order: usize,
}

/// Hermiticity of `Θ` and of `log⋆ Θ`, coefficient by coefficient (the
/// coupling is real).
pub fn certify_metric<C: Scalar>(theta: &CouplingSeries<C>) -> Result<CertReport> {
    if !theta.coeff(0).is_one() {
        return Err(Error::BadConstantTerm);
    }
    let hermitian = theta.coeffs().iter().all(is_hermitian);
    let positive = star_log(theta)?.coeffs().iter().all(is_hermitian);
    Ok(CertReport { hermitian, positive, order: theta.order() })
}

/// `Σ_k coeffs[k] · H^{⋆k}` as a series.
fn star_polynomial<C: Scalar>(h: &CouplingSeries<C>, coeffs: &[C]) -> Result<CouplingSeries<C>> {
    let mut acc = CouplingSeries::zero(h.coupling(), h.order());
    let mut power = CouplingSeries::one(h.coupling(), h.order());
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = star_series(&power, h)?;
        }
        if !c.is_zero() {
            acc = acc.add(&power.map(|p| p.scale(c)))?;
        }
    }
    Ok(acc)
}

/// `f(H) ⋆ Θ ⋆ g(H†)` with `f`, `g` given by their coefficient lists; again
/// a solution whenever `Θ` is.
pub fn solution_family_closure<C: Scalar>(
    h: &HamiltonianSpec<C>,
    theta: &CouplingSeries<C>,
    f: &[C],
    g: &[C],
) -> Result<CouplingSeries<C>> {
    let hs = h.as_series(theta.coupling(), theta.order())?;
    let fh = star_polynomial(&hs, f)?;
    let gh = star_polynomial(&dagger_series(&hs), g)?;
    star_series(&star_series(&fh, theta)?, &gh)
}

/// `g(H) ⋆ Θ ⋆ g(H)†`, which also preserves hermiticity of `Θ`.
pub fn solution_family_closure_hermitian<C: Scalar>(
    h: &HamiltonianSpec<C>,
    theta: &CouplingSeries<C>,
    g: &[C],
) -> Result<CouplingSeries<C>> {
    let hs = h.as_series(theta.coupling(), theta.order())?;
    let gh = star_polynomial(&hs, g)?;
    star_series(&star_series(&gh, theta)?, &dagger_series(&gh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{metric_residual_series, solve_perturbative};
    use crate::phase::PhasePoly;
    use crate::scalar::GaussianRational as G;

    type P = PhasePoly<G>;

    fn ix3_spec() -> HamiltonianSpec<G> {
        HamiltonianSpec::with_coupling(P::p().pow(2), "g", P::mono(G::i(), 3, 0, 0))
    }

    #[test]
    fn certify_examples() {
        let theta = solve_perturbative(&P::mono(G::i(), 3, 0, 0), 2).unwrap();
        assert_eq!(certify_metric(&theta).unwrap(), CertReport { hermitian: true, positive: true, order: 2 });
        let bad = CouplingSeries::linear("g", P::one(), P::mono(G::i(), 1, 0, 0), 1);
        assert!(!certify_metric(&bad).unwrap().hermitian);
        let shifted = CouplingSeries::linear("g", P::x(), P::one(), 1);
        assert_eq!(certify_metric(&shifted), Err(Error::BadConstantTerm));
    }

    #[test]
    fn closure_keeps_solutions() {
        let spec = ix3_spec();
        let theta = solve_perturbative(&P::mono(G::i(), 3, 0, 0), 2).unwrap();
        assert_eq!(solution_family_closure(&spec, &theta, &[G::one()], &[G::one()]).unwrap(), theta);
        let f = [G::from_int(2), G::one()];
        let g = [G::ratio(1, 3), G::zero(), G::from_int(-1)];
        let out = solution_family_closure(&spec, &theta, &f, &g).unwrap();
        assert!(metric_residual_series(&spec, &out).unwrap().is_zero());
        assert_ne!(out, theta);
    }

    #[test]
    fn hermitian_closure_stays_hermitian() {
        let spec = ix3_spec();
        let theta = solve_perturbative(&P::mono(G::i(), 3, 0, 0), 2).unwrap();
        let out = solution_family_closure_hermitian(&spec, &theta, &[G::one(), G::ratio(1, 2)]).unwrap();
        assert!(out.coeffs().iter().all(is_hermitian));
        assert!(metric_residual_series(&spec, &out).unwrap().is_zero());
    }
}
