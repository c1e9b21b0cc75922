//! Monic matrix biorthogonal polynomials on `[0, ∞)`: construction from
//! moments, recursion coefficients, and second kind functions.

mod error;
pub mod pipeline;
pub mod second_kind;
pub mod system;

pub use error::BiorthError;
pub use pipeline::{build_from_model, build_report, BuildReport, Built};
pub use second_kind::{distance_to_ray, SecondKindEvaluator, SecondKindValues, MIN_DISTANCE};
pub use system::{build_biorth, required_moments, BiorthSystem};
