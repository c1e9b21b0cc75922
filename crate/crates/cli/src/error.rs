use matbiorth_biorth::BiorthError;
use matbiorth_moments::MomentError;
use matbiorth_painleve::PainleveError;
use matbiorth_rhp::RhpError;
use thiserror::Error;

/// Failures with their process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("regularity failure: {0}")]
    Regularity(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unsupported model shape: {0}")]
    Shape(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Quadrature(_) => 2,
            CliError::Regularity(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Shape(_) => 5,
        }
    }
}

impl From<MomentError> for CliError {
    fn from(e: MomentError) -> Self {
        match e {
            MomentError::QuadratureDivergence { .. } | MomentError::RecurrenceResidual { .. } => {
                CliError::Quadrature(e.to_string())
            }
            MomentError::RegularityFailure { .. } => CliError::Regularity(e.to_string()),
            MomentError::Weight(_) | MomentError::Linalg(_) | MomentError::TableTooShort { .. } => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

impl From<BiorthError> for CliError {
    fn from(e: BiorthError) -> Self {
        match e {
            BiorthError::Moment(m) => m.into(),
            BiorthError::Linalg(_) => CliError::Regularity(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<RhpError> for CliError {
    fn from(e: RhpError) -> Self {
        match e {
            RhpError::Biorth(b) => b.into(),
            RhpError::Moment(m) => m.into(),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

impl From<PainleveError> for CliError {
    fn from(e: PainleveError) -> Self {
        CliError::Verification(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}
