use crate::error::{Error, Result};
use crate::phase::{CouplingSeries, Monomial, PhasePoly};
use crate::scalar::{GaussianRational, Scalar};
use crate::star::dagger;

use super::{metric_residual_series, HamiltonianSpec};

/// `L₁Θ = V ⋆ Θ − Θ ⋆ V†` for an x-only `V`, written out: the right factor
/// is pointwise and the left one pulls p-derivatives onto `Θ`.
fn l1<C: Scalar>(v: &PhasePoly<C>, vd: &PhasePoly<C>, theta: &PhasePoly<C>) -> PhasePoly<C> {
    crate::star::star(v, theta) - theta * vd
}

/// Series solution `Θ = 1 + gΘ₁ + …` of the metric equation for
/// `H = p² + g V(x)`, with all integration functions set to zero.
pub fn solve_perturbative<C: Scalar>(v: &PhasePoly<C>, order: usize) -> Result<CouplingSeries<C>> {
    solve_perturbative_with(v, order, &[])
}

/// As [`solve_perturbative`], with `integration[n-1]` (x-independent) added
/// to `Θₙ` as its x⁰ part. Missing entries are zero.
pub fn solve_perturbative_with<C: Scalar>(
    v: &PhasePoly<C>,
    order: usize,
    integration: &[PhasePoly<C>],
) -> Result<CouplingSeries<C>> {
    if !v.is_p_independent() {
        return Err(Error::InvalidInput("perturbation must depend on x only".into()));
    }
    if let Some(f) = integration.iter().find(|f| !f.is_x_independent()) {
        return Err(Error::InvalidInput(format!("integration function depends on x: {f:?}")));
    }
    let vd = dagger(v);
    let mut coeffs = vec![PhasePoly::one()];
    for n in 1..=order {
        let rhs = -l1(v, &vd, &coeffs[n - 1]);
        let theta0 = integration.get(n - 1).cloned().unwrap_or_default();
        coeffs.push(solve_l0(&rhs, theta0));
    }
    let theta = CouplingSeries::new("g", coeffs)?;
    let spec = HamiltonianSpec::with_coupling(PhasePoly::p().pow(2), "g", v.clone());
    let res = metric_residual_series(&spec, &theta)?;
    if let Some(bad) = res.coeffs().iter().position(|c| !c.is_zero()) {
        return Err(Error::UnsolvableOrder { order: bad });
    }
    Ok(theta)
}

/// Polynomial-in-x solution of `ħ²Θ_xx − 2iħpΘ_x = r` with x⁰ part `theta0`.
///
/// Matching `x^m`: `−2iħp(m+1)θ_{m+1} + ħ²(m+2)(m+1)θ_{m+2} = r_m`, solved
/// from the top power down.
fn solve_l0<C: Scalar>(r: &PhasePoly<C>, theta0: PhasePoly<C>) -> PhasePoly<C> {
    let d = r.max_x_degree();
    let mut theta: Vec<PhasePoly<C>> = vec![PhasePoly::zero(); d as usize + 3];
    let hbar2 = Monomial::new(0, 0, 2);
    let inv_hp = Monomial::new(0, -1, -1);
    for m in (0..=d).rev() {
        let rm = r.x_coefficient(m);
        let upper = theta[m as usize + 2].mul_monomial(hbar2).scale_gaussian(&GaussianRational::from_int(
            (m as i64 + 2) * (m as i64 + 1),
        ));
        // divide by −2iħp(m+1): multiply by i/(2(m+1)) and by 1/(ħp)
        let k = &GaussianRational::i() * &GaussianRational::ratio(1, 2 * (m as i64 + 1));
        theta[m as usize + 1] = (&rm - &upper).mul_monomial(inv_hp).scale_gaussian(&k);
    }
    theta[0] = theta0;
    let mut out = PhasePoly::zero();
    for (j, t) in theta.iter().enumerate() {
        out = &out + &t.mul_monomial(Monomial::new(j as u32, 0, 0));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    type P = PhasePoly<G>;

    fn ix3() -> P {
        P::mono(G::i(), 3, 0, 0)
    }

    #[test]
    fn first_order_term() {
        let theta = solve_perturbative(&ix3(), 1).unwrap();
        let expected = P::from_terms([
            (Monomial::new(1, -4, 2), G::complex((0, 1), (3, 4))),
            (Monomial::new(2, -3, 1), G::ratio(-3, 4)),
            (Monomial::new(3, -2, 0), G::complex((0, 1), (-1, 2))),
            (Monomial::new(4, -1, -1), G::ratio(1, 4)),
        ]);
        assert_eq!(theta.coeff(1), &expected);
        assert_eq!(theta.coeff(0), &P::one());
    }

    #[test]
    fn second_order_term() {
        let theta = solve_perturbative(&ix3(), 2).unwrap();
        let im = |n, d| G::complex((0, 1), (n, d));
        let expected = P::from_terms([
            (Monomial::new(1, -9, 5), im(108, 1)),
            (Monomial::new(2, -8, 4), G::from_int(-108)),
            (Monomial::new(3, -7, 3), im(-57, 1)),
            (Monomial::new(4, -6, 2), G::from_int(21)),
            (Monomial::new(5, -5, 1), im(6, 1)),
            (Monomial::new(6, -4, 0), G::ratio(-11, 8)),
            (Monomial::new(7, -3, -1), im(-1, 4)),
            (Monomial::new(8, -2, -2), G::ratio(1, 32)),
        ]);
        assert_eq!(theta.coeff(2), &expected);
    }

    #[test]
    fn order_zero_is_one() {
        let theta = solve_perturbative(&P::x().pow(2), 0).unwrap();
        assert_eq!(theta.coeffs(), &[P::one()]);
    }

    #[test]
    fn top_x_power_is_singular_in_hbar() {
        let theta = solve_perturbative(&ix3(), 3).unwrap();
        for (n, c) in theta.coeffs().iter().enumerate().skip(1) {
            let (_, hi) = c.hbar_range_at_x(c.max_x_degree()).unwrap();
            assert!(hi < 0, "order {n}");
        }
    }

    #[test]
    fn integration_functions_are_honoured() {
        let f = P::mono(G::from_int(5), 0, -2, 0);
        let theta = solve_perturbative_with(&ix3(), 2, std::slice::from_ref(&f)).unwrap();
        assert_eq!(theta.coeff(1).x_coefficient(0), f);
        assert!(solve_perturbative_with(&ix3(), 1, &[P::x()]).is_err());
    }

    #[test]
    fn other_potentials_solve_too() {
        let v = &P::mono(G::i(), 1, 0, 0) + &P::x().pow(2);
        let theta = solve_perturbative(&v, 3).unwrap();
        assert_eq!(theta.order(), 3);
        assert!(solve_perturbative(&P::p(), 1).is_err());
    }
}
