//! Exact coefficient fields.
//!
//! Everything above this module is generic over [`Scalar`]: the Gaussian
//! rationals for numeric work, and [`RatFunc`] when Hamiltonian parameters
//! (a, b, c, q₁, q₂, g, ...) stay symbolic.

mod gaussian;
mod linsolve;
mod mpoly;
mod ratfunc;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use gaussian::{format_rational, parse_rational, GaussianRational};
pub use linsolve::solve_linear;
pub use mpoly::{Exponents, MPoly};
pub use ratfunc::{rf_eval, rf_partial, RatFunc};

/// Bivariate rational function in the Hamiltonian parameters `(q₁, q₂)`.
pub type RatFunc2 = RatFunc;

/// A commutative field of exact coefficients containing the Gaussian rationals.
///
/// Parameters of the field (if any) are real, so [`Scalar::conj`] conjugates
/// only the numeric coefficients.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_gaussian(z: GaussianRational) -> Self;
    fn conj(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn is_real(&self) -> bool {
        self.conj() == *self
    }

    fn mul_gaussian(&self, z: &GaussianRational) -> Self {
        self.clone() * Self::from_gaussian(z.clone())
    }

    fn from_int(n: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_int(n))
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn from_gaussian(z: GaussianRational) -> Self {
        z
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn is_real(&self) -> bool {
        GaussianRational::is_real(self)
    }
    fn mul_gaussian(&self, z: &GaussianRational) -> Self {
        self * z
    }
}

/// Complex conjugation of a Gaussian rational.
pub fn gr_conj(z: &GaussianRational) -> GaussianRational {
    z.conj()
}
