//! Discrete Painlevé IV residuals on recursion coefficients of matrix weights
//! with one-sided quadratic Pearson data `hᴸ = A + Bz + Cz²`.

mod data;
mod error;
mod residuals;

pub use data::DPIVData;
pub use error::PainleveError;
pub use residuals::{
    commutative_xi_mu, dpiv_residuals, dpiv_table, ghr_instance_residual, ghr_printed_shift_residual,
    nonabelian_theorem_residuals, DpivResidual, DpivRow, GhrResidual, XiMu, COMMUTATIVITY_TOL,
};
