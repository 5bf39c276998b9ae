//! The ring of phase-space functions `A(x, p)` with symbolic ħ, and
//! truncated series in a formal coupling.

mod params;
mod poly;
mod series;

pub use params::{ModelParams, Provenance};
pub use poly::{
    factorial, falling, pp_conjugate, pp_derivative, pp_integrate_x, pp_mul, Monomial, PhasePoly, Var,
};
pub use series::{series_mul, CouplingSeries};
