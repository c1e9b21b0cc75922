use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("spectra overlap: eigenvalue gap {gap:.3e} below tolerance {tol:.1e}")]
    SpectraOverlap { gap: f64, tol: f64 },
    #[error("matrix power requested at z = 0")]
    ZeroArgument,
    #[error("matrix is numerically singular")]
    Singular,
    #[error("eigenvalue computation did not converge")]
    EigenFailure,
}
