use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::phase::{factorial, PhasePoly, Var};
use crate::scalar::{GaussianRational, Scalar};
use crate::star::{dagger, twist};

/// Linear differential operator `Σ c_ij(x,p,ħ) ∂x^i ∂p^j`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct PdeOperator<C> {
    coeffs: BTreeMap<(u32, u32), PhasePoly<C>>,
}

impl<C: Scalar> PdeOperator<C> {
    pub fn new() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn add_coeff(&mut self, i: u32, j: u32, c: PhasePoly<C>) {
        let slot = self.coeffs.entry((i, j)).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    /// Coefficient of `∂x^i ∂p^j` (zero when absent).
    pub fn coeff(&self, i: u32, j: u32) -> PhasePoly<C> {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &PhasePoly<C>)> {
        self.coeffs.iter()
    }

    pub fn apply(&self, theta: &PhasePoly<C>) -> PhasePoly<C> {
        let mut out = PhasePoly::zero();
        for (&(i, j), c) in &self.coeffs {
            let d = theta.nth_derivative(Var::X, i).nth_derivative(Var::P, j);
            out = &out + &(c * &d);
        }
        out
    }

    pub fn map(&self, f: impl Fn(&PhasePoly<C>) -> PhasePoly<C>) -> Self {
        let mut out = Self::new();
        for (&(i, j), c) in &self.coeffs {
            out.add_coeff(i, j, f(c));
        }
        out
    }

    pub fn eval_hbar_one(&self) -> Self {
        self.map(|c| c.eval_hbar_one())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    /// Complex-conjugate operator (coefficients conjugated).
    pub fn conjugate(&self) -> Self {
        self.map(|c| c.conjugate())
    }

    /// Recover the coefficients of an operator from its action on monomials
    /// `x^i p^j`, for all orders `i ≤ max_x`, `j ≤ max_p`.
    pub fn from_action(op: impl Fn(&PhasePoly<C>) -> PhasePoly<C>, max_x: u32, max_p: u32) -> Self {
        let basis = |i: u32, j: u32| {
            let w = BigRational::new(1.into(), factorial(i) * factorial(j));
            PhasePoly::mono(GaussianRational::from_real(w), i, j as i32, 0)
        };
        let mut out = Self::new();
        for i in 0..=max_x {
            for j in 0..=max_p {
                let mut c = op(&basis(i, j));
                for (&(a, b), cab) in &out.coeffs {
                    if a <= i && b <= j {
                        c = &c - &(cab * &basis(i - a, j - b));
                    }
                }
                out.add_coeff(i, j, c);
            }
        }
        out
    }

    /// `e^{−iħ∂x∂p} L e^{iħ∂x∂p} = −L*`, checked coefficientwise on all
    /// orders up to the given bounds.
    pub fn conjugation_symmetric(&self, max_x: u32, max_p: u32) -> bool {
        let conj = Self::from_action(|t| twist(&self.apply(&twist(t, 1)), -1), max_x, max_p);
        let expected = self.conjugate().neg();
        let fits = expected.coeffs.keys().all(|&(i, j)| i <= max_x && j <= max_p);
        fits && conj == expected
    }

    pub fn max_orders(&self) -> (u32, u32) {
        self.coeffs.keys().fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)))
    }
}

fn star_weight(k: u32) -> PhasePoly<GaussianRational> {
    let w = &GaussianRational::i_pow(k as i64) * &GaussianRational::from_real(BigRational::new(1.into(), factorial(k)));
    PhasePoly::mono(w, 0, 0, k as i32)
}

/// `L` with `L(Θ) = H ⋆ Θ − Θ ⋆ H†` for every `Θ`.
pub fn pde_operator<C: Scalar>(h: &PhasePoly<C>) -> Result<PdeOperator<C>> {
    let hd = dagger(h);
    if !hd.is_polynomial_in_p() {
        return Err(Error::NonTerminating("H† has negative powers of p".into()));
    }
    let mut op = PdeOperator::new();
    for k in 0..=h.max_x_degree() {
        let w = star_weight(k).map_coeffs(|z| C::from_gaussian(z.clone()));
        op.add_coeff(0, k, &w * &h.nth_derivative(Var::X, k));
    }
    let kp = hd.max_p_degree().unwrap_or(0).max(0) as u32;
    for k in 0..=kp {
        let w = star_weight(k).map_coeffs(|z| C::from_gaussian(z.clone()));
        op.add_coeff(k, 0, -(&w * &hd.nth_derivative(Var::P, k)));
    }
    Ok(op)
}
