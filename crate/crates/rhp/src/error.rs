use matbiorth_biorth::BiorthError;
use matbiorth_linalg::LinalgError;
use matbiorth_moments::MomentError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RhpError {
    #[error("N-transform has a pole at z = 0")]
    PoleAtZero,
    #[error("degree {n} is not an eigenfunction: residual {residual:.3e} > {tol:.1e}")]
    NotEigenfunction { n: usize, residual: f64, tol: f64 },
    #[error("degree {n} outside the usable range {lo}..={hi}")]
    DegreeOutOfRange { n: usize, lo: usize, hi: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Biorth(#[from] BiorthError),
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
