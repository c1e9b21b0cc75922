use matbiorth_linalg::{LaurentPolynomial, Mat, MatPoly, C64};

use crate::error::RhpError;

/// `N(F) = F' + F²/z` of a matrix polynomial.
#[derive(Clone, Debug)]
pub struct NTransform {
    pub laurent: LaurentPolynomial,
}

impl NTransform {
    pub fn of(f: &MatPoly) -> Self {
        NTransform { laurent: f.n_transform() }
    }

    /// True when `F(0)² ≠ 0`, so the transform has a simple pole at the origin.
    pub fn has_pole(&self) -> bool {
        self.laurent.has_pole()
    }

    pub fn eval(&self, z: C64) -> Result<Mat, RhpError> {
        self.laurent.eval(z).ok_or(RhpError::PoleAtZero)
    }
}

/// `N(F)(z)` for a matrix function given by its value and derivative at `z`.
pub fn n_transform_value(f: &Mat, df: &Mat, z: C64) -> Result<Mat, RhpError> {
    if z == C64::new(0.0, 0.0) {
        return Err(RhpError::PoleAtZero);
    }
    Ok(df + f.square().scale(C64::new(1.0, 0.0) / z))
}
