use matbiorth_linalg::LinalgError;
use matbiorth_weights::WeightError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MomentError {
    #[error("quadrature did not converge after {panels} panels: {detail}")]
    QuadratureDivergence { panels: usize, detail: String },
    #[error("block moment matrix of degree {n} is numerically singular (condition {cond:.3e}, limit {limit:.3e})")]
    RegularityFailure { n: usize, cond: f64, limit: f64 },
    #[error("moment table has {have} entries, {need} needed")]
    TableTooShort { need: usize, have: usize },
    #[error("recurrence step {n} left a relative residual {residual:.3e}")]
    RecurrenceResidual { n: usize, residual: f64 },
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
