use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{GaussianRational, MPoly, Scalar};
use crate::error::{Error, Result};

/// Exact rational function `num/den` over the Gaussian rationals.
///
/// Kept reduced (`gcd(num, den) = 1`) with `den` in canonical form: a
/// primitive integer polynomial with positive leading coefficient when real,
/// monic otherwise. Equality is still decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    /// Errors with `ZeroDenominator` when `den` is identically zero.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(num: MPoly) -> Self {
        Self { num, den: MPoly::one() }
    }

    pub fn var(index: usize) -> Self {
        Self::from_poly(MPoly::var(index))
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    fn reduced(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(MPoly::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = MPoly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides num"), den.div_exact(&g).expect("gcd divides den"))
            }
        };
        let (unit, den) = den.canonical_unit();
        let inv = unit.inv().expect("nonzero denominator unit");
        Self { num: num.scale(&inv), den }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Exact value at a parameter point; `PoleAtPoint` where the denominator vanishes.
    pub fn eval(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        self.num.eval(point).checked_div(&d)
    }

    pub fn eval_f64(&self, point: &[num_complex::Complex64]) -> Result<num_complex::Complex64> {
        let d = self.den.eval_f64(point);
        if d.norm() == 0.0 {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval_f64(point) / d)
    }

    /// Quotient-rule partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Self {
        let dn = self.num.derivative(var);
        if self.den.is_constant() {
            return Self::reduced(dn, self.den.clone());
        }
        let dd = self.den.derivative(var);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduced(num, &self.den * &self.den)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.den.is_one() {
            return self.num.display_with(names);
        }
        let wrap = |p: &MPoly| {
            let s = p.display_with(names);
            if p.len() > 1 { format!("({s})") } else { s }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// Evaluate a bivariate rational function at `(q1, q2)`.
pub fn rf_eval(f: &RatFunc, q1: &GaussianRational, q2: &GaussianRational) -> Result<GaussianRational> {
    f.eval(&[q1.clone(), q2.clone()])
}

/// Partial derivative with respect to `q_which` (1 or 2).
pub fn rf_partial(f: &RatFunc, which: usize) -> Result<RatFunc> {
    match which {
        1 | 2 => Ok(f.partial(which - 1)),
        _ => Err(Error::InvalidInput(format!("parameter index {which} not in {{1,2}}"))),
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::reduced(&self.num + &o.num, self.den);
        }
        let g = MPoly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&o.num * &a);
        RatFunc::reduced(num, &a * &o.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self + (-o)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::from_poly(MPoly::zero());
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFunc::reduced(&self.num * &o.num, &self.den * &o.den);
        }
        let g1 = MPoly::gcd(&self.num, &o.den);
        let g2 = MPoly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let (unit, den) = (&d1 * &d2).canonical_unit();
        RatFunc { num: (&n1 * &n2).scale(&unit.inv().expect("nonzero")), den }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(MPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_gaussian(z: GaussianRational) -> Self {
        RatFunc::constant(z)
    }
    fn conj(&self) -> Self {
        RatFunc::reduced(self.num.conj(), self.den.conj())
    }
    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::reduced(self.den.clone(), self.num.clone()))
        }
    }
    fn mul_gaussian(&self, z: &GaussianRational) -> Self {
        if z.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(z), den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&["q1", "q2"]))
    }
}
