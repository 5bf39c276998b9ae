//! Exact Moyal-product calculus for quasi-hermitian quantum mechanics.
//!
//! Phase-space functions `A(x, p)` with a symbolic `ħ` are multiplied with the
//! left-∂x / right-∂p star product
//!
//! ```text
//! A ⋆ B = Σ_k (iħ)^k / k! · ∂x^k A · ∂p^k B,     x ⋆ p − p ⋆ x = iħ
//! ```
//!
//! which matches operator ordering `U(t, s) = e^{itp̂} e^{isx̂}`. On top of the
//! star calculus sit the metric engine (solving `H ⋆ Θ = Θ ⋆ H†`), the Berry
//! engine and a finite-N clock/shift oracle.

pub mod berry;
pub mod error;
pub mod io;
pub mod metric;
pub mod phase;
pub mod scalar;
pub mod star;
pub mod weyl;

pub use error::{Error, Result};
pub use phase::{CouplingSeries, Monomial, PhasePoly};
pub use scalar::{GaussianRational, MPoly, RatFunc, RatFunc2, Scalar};
