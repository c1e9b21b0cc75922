//! Laguerre-type matrix weights on the ray `[0, ∞)`.

pub mod boundary;
pub mod corpus;
mod error;
pub mod model;
pub mod pearson;
pub mod series;

pub use boundary::{check_boundary_conditions, pearson_residual, weight_second_order_residual, BoundaryReport};
pub use error::WeightError;
pub use model::{Evaluator, WeightModel};
pub use pearson::PearsonData;
pub use series::{frobenius_series, LocalFundamental, Side};
