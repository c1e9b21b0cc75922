use matbiorth_linalg::LinalgError;
use matbiorth_moments::MomentError;
use matbiorth_weights::WeightError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BiorthError {
    #[error("z is {dist:.3e} from the support, closer than {min}")]
    TooCloseToSupport { dist: f64, min: f64 },
    #[error("degree {n} outside the built range 0..={n_max}")]
    DegreeOutOfRange { n: usize, n_max: usize },
    #[error(transparent)]
    Moment(#[from] MomentError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
