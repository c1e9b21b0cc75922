//! Riemann–Hilbert objects built from a biorthogonal system: fundamental
//! matrices `Yₙ`, transfer matrices `Tₙ`, structure matrices `M̃ₙ`, and the
//! identities tying them together.

pub mod blockpoly;
pub mod eigen;
mod error;
pub mod frame;
pub mod identities;
pub mod ntransform;
pub mod ode;
pub mod structure;
pub mod suite;

pub use blockpoly::BlockPoly;
pub use eigen::{adjointness_check, default_alphas, eigenvalue_check, EigenCheck};
pub use error::RhpError;
pub use frame::{assemble_y, Frame, FrameSet};
pub use identities::{corollary_identities, det_residual, left_right_residual, transfer_matrix, transfer_residual};
pub use ntransform::{n_transform_value, NTransform};
pub use ode::{first_order_ode_residual, second_order_ode_residual};
pub use structure::{
    structure_matrix_explicit, structure_matrix_explicit_right, structure_matrix_from_frame, structure_matrix_numeric,
    zero_curvature_residual, Stencil, StructureMatrix,
};
pub use suite::{run_suite, z_ring, Family, Record, SuiteInput};
