//! Dense complex linear algebra at runtime-fixed size: square matrices,
//! matrix polynomials, 2×2 block matrices, matrix functions and Sylvester
//! solves, generic over a double or double-double scalar.

pub mod block;
pub mod dense;
pub mod diff;
mod error;
pub mod funcs;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod scalar;
pub mod sylvester;

pub use block::{Block, BlockMatrix2x2};
pub use dense::{Dense, Lu};
pub use error::LinalgError;
pub use funcs::{eigenvalues, log_ray, matrix_exp, matrix_power, spectral_gap};
pub use matrix::{Mat, SquareMatrix};
pub use poly::{LaurentPolynomial, MatPoly, MatrixPolynomial};
pub use scalar::{Cdd, Precision, Scalar, C64};
pub use sylvester::{solve_sylvester, sylvester_residual, GAP_TOL};

pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}
