//! Berry connections: a 2×2 matrix model with exceptional points, and the
//! quadratic oscillator at the level of star brackets.

mod cmatrix;
mod moyal;
mod region;
mod transport;
mod two_level;

pub use cmatrix::CMatrix;
pub use moyal::{
    locus_polynomial, moyal_connection_solve, moyal_curvature, moyal_hamiltonian, moyal_hamiltonian_partials,
    moyal_residual, singular_locus, MoyalConnection,
};
pub use region::{classify_oscillator, distance_to_locus, origin_radius, oscillator_to_q, LocusReport};
pub use transport::*;
pub use two_level::{
    eigenvector_matrix, eigenvector_matrix_partial, gauge_fixed_connection, general_connection, hamiltonian,
    hamiltonian_partials, solve_connection_2x2, verify_connection_matrix,
};
