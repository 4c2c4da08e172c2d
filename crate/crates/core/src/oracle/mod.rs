//! Reference eigensolver for σ√(p² + m²) + V(r) and its nonrelativistic and
//! two-mass variants in a Laguerre-function basis.
//!
//! The radial basis is x^{l+1} e^{-x/2} L_k^{(2l+2)}(x) with x = r/b. Matrix
//! elements of p² are exact under Gauss–Laguerre quadrature; the kinetic square
//! root comes from the spectral decomposition of the truncated p² matrix.

mod quadrature;
mod solver;

pub use quadrature::{gauss_laguerre, laguerre_log_values, tridiagonal_eigenvalues};
pub use solver::{
    delta_gap, expectation_p2, jensen_gap, solve_radial, solve_radial_with, Expectation,
    HamiltonianSpec, Kinetic, LaguerreBasis, OracleOptions, OracleResult,
};
