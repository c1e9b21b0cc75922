use matbiorth_linalg::LinalgError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("invalid Pearson data: {0}")]
    InvalidPearson(String),
    #[error("weight exponent has eigenvalue {0} with real part <= -1 or nonzero imaginary part")]
    NotIntegrableAtOrigin(String),
    #[error("leading Pearson coefficient has eigenvalue with real part {re:.3e} >= 0; moments would diverge")]
    NoDecay { re: f64 },
    #[error("parameters do not commute: {0}")]
    NonCommuting(String),
    #[error("no evaluator reaches x = {x}")]
    UnsupportedEvaluator { x: f64 },
    #[error("weight evaluated at non-positive x = {0}")]
    NonPositiveArgument(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
