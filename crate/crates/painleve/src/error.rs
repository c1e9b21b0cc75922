use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PainleveError {
    #[error("data do not commute: defect {defect:e} exceeds {tol:e}")]
    CommutativityViolation { defect: f64, tol: f64 },
    #[error("factor inverted at n = {n} is singular (relative determinant {det:e})")]
    SingularFactor { n: usize, det: f64 },
    #[error("degree {n} needs coefficients through {need}, have {have}")]
    DegreeOutOfRange { n: usize, need: usize, have: usize },
    #[error("{0}")]
    Precondition(String),
}
