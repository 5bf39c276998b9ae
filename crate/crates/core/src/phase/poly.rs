use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{GaussianRational, Scalar};

/// Exponents of `x^x · p^p · ħ^hbar`. Field order gives the canonical
/// lexicographic order on `(x, p, ħ)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    pub x: u32,
    pub p: i32,
    pub hbar: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, p: 0, hbar: 0 };

    pub fn new(x: u32, p: i32, hbar: i32) -> Self {
        Self { x, p, hbar }
    }

    pub fn mul(self, o: Monomial) -> Monomial {
        Monomial { x: self.x + o.x, p: self.p + o.p, hbar: self.hbar + o.hbar }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X,
    P,
}

/// `n (n-1) ... (n-k+1)` for any integer `n`.
pub fn falling(n: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k as i64 {
        acc *= n - j;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k as i64).fold(BigInt::one(), |a, j| a * j)
}

/// Sparse Laurent polynomial in `(x, p, ħ)`: `x`-degree ≥ 0, `p` and `ħ`
/// degrees any integer. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct PhasePoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Default for PhasePoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> PhasePoly<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// `c · x^x p^p ħ^hbar` with a Gaussian-rational coefficient.
    pub fn mono(c: GaussianRational, x: u32, p: i32, hbar: i32) -> Self {
        Self::term(Monomial::new(x, p, hbar), C::from_gaussian(c))
    }

    pub fn x() -> Self {
        Self::mono(GaussianRational::one(), 1, 0, 0)
    }

    pub fn p() -> Self {
        Self::mono(GaussianRational::one(), 0, 1, 0)
    }

    pub fn hbar() -> Self {
        Self::mono(GaussianRational::one(), 0, 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_of(&self, x: u32, p: i32, hbar: i32) -> C {
        self.coeff(Monomial::new(x, p, hbar))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(Monomial::ONE) == C::one()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v.clone() * c.clone())))
    }

    pub fn scale_gaussian(&self, z: &GaussianRational) -> Self {
        if z.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(m, v)| (*m, v.mul_gaussian(z))))
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> PhasePoly<D> {
        PhasePoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn max_p_degree(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.p).max()
    }

    pub fn min_p_degree(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.p).min()
    }

    pub fn is_x_independent(&self) -> bool {
        self.terms.keys().all(|m| m.x == 0)
    }

    pub fn is_p_independent(&self) -> bool {
        self.terms.keys().all(|m| m.p == 0)
    }

    /// No negative powers of `p` (ħ may still carry any power).
    pub fn is_polynomial_in_p(&self) -> bool {
        self.terms.keys().all(|m| m.p >= 0)
    }

    pub fn max_xp_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.x as i64 + m.p as i64).max().unwrap_or(0)
    }

    /// k-th derivative with respect to `x` or `p`.
    pub fn nth_derivative(&self, var: Var, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            match var {
                Var::X => {
                    if m.x < k {
                        continue;
                    }
                    let f = falling(m.x as i64, k);
                    out.add_term(
                        Monomial::new(m.x - k, m.p, m.hbar),
                        c.mul_gaussian(&GaussianRational::from_bigint(f)),
                    );
                }
                Var::P => {
                    let f = falling(m.p as i64, k);
                    if f.is_zero() {
                        continue;
                    }
                    out.add_term(
                        Monomial::new(m.x, m.p - k as i32, m.hbar),
                        c.mul_gaussian(&GaussianRational::from_bigint(f)),
                    );
                }
            }
        }
        out
    }

    pub fn derivative(&self, var: Var) -> Self {
        self.nth_derivative(var, 1)
    }

    /// Antiderivative in `x` with the integration function of `p` set to zero.
    pub fn integrate_x(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let k = m.x as i64 + 1;
            (Monomial::new(m.x + 1, m.p, m.hbar), c.mul_gaussian(&GaussianRational::ratio(1, k)))
        }))
    }

    /// Coefficientwise complex conjugation; `x`, `p`, `ħ` are real.
    pub fn conjugate(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.conj())))
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Set `ħ = 1`, collapsing all ħ-degrees.
    pub fn eval_hbar_one(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Monomial::new(m.x, m.p, 0), c.clone())))
    }

    /// Pointwise power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of `x^j` as a `(p, ħ)`-Laurent polynomial.
    pub fn x_coefficient(&self, j: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.x == j)
                .map(|(m, c)| (Monomial::new(0, m.p, m.hbar), c.clone())),
        )
    }

    /// Multiplicative inverse when `self` is a single term.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if m.x != 0 {
            return None;
        }
        Some(Self::term(Monomial::new(0, -m.p, -m.hbar), c.inverse()?))
    }

    /// Lowest and highest ħ-degree among terms with the given x-degree.
    pub fn hbar_range_at_x(&self, x: u32) -> Option<(i32, i32)> {
        let it = self.terms.keys().filter(|m| m.x == x).map(|m| m.hbar);
        let v: Vec<i32> = it.collect();
        Some((*v.iter().min()?, *v.iter().max()?))
    }
}

/// Pointwise product of phase-space functions.
pub fn pp_mul<C: Scalar>(a: &PhasePoly<C>, b: &PhasePoly<C>) -> PhasePoly<C> {
    a * b
}

pub fn pp_derivative<C: Scalar>(a: &PhasePoly<C>, var: Var) -> PhasePoly<C> {
    a.derivative(var)
}

pub fn pp_integrate_x<C: Scalar>(a: &PhasePoly<C>) -> PhasePoly<C> {
    a.integrate_x()
}

pub fn pp_conjugate<C: Scalar>(a: &PhasePoly<C>) -> PhasePoly<C> {
    a.conjugate()
}

impl<C: Scalar> Add for &PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn add(self, o: &PhasePoly<C>) -> PhasePoly<C> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn sub(self, o: &PhasePoly<C>) -> PhasePoly<C> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<C: Scalar> Mul for &PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn mul(self, o: &PhasePoly<C>) -> PhasePoly<C> {
        let mut out = PhasePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(*mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar> Neg for &PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn neg(self) -> PhasePoly<C> {
        PhasePoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl<C: Scalar> $tr for PhasePoly<C> {
            type Output = PhasePoly<C>;
            fn $m(self, o: PhasePoly<C>) -> PhasePoly<C> {
                (&self).$m(&o)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl<C: Scalar> Neg for PhasePoly<C> {
    type Output = PhasePoly<C>;
    fn neg(self) -> PhasePoly<C> {
        -&self
    }
}
