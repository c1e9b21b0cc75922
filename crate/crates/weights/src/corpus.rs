//! The reference models used across the test suites and the CLI examples.

use matbiorth_linalg::{re, Mat};

use crate::model::WeightModel;

fn nilpotent() -> Mat {
    Mat::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])
}

/// `x^α e^{−x}`.
pub fn laguerre(alpha: f64) -> WeightModel {
    WeightModel::duran_grunbaum(Mat::real_diag(&[-0.5]), Mat::real_diag(&[-0.5]), Mat::real_diag(&[alpha]))
        .expect("valid Laguerre parameters")
}

/// `e^{A x} x^α e^{A x}` with `α = I/2 + N/5`, `A = −I/2 + 3N/10`,
/// `N = E₁₂`.
pub fn duran_grunbaum_commuting() -> WeightModel {
    let n = nilpotent();
    let alpha = Mat::identity(2).scale(re(0.5)) + n.scale(re(0.2));
    let a = Mat::identity(2).scale(re(-0.5)) + n.scale(re(0.3));
    WeightModel::duran_grunbaum(a.clone(), a, alpha).expect("commuting parameters")
}

/// `diag(x^{α₁} e^{−x}, x^{α₂} e^{−x})`.
pub fn laguerre_diagonal(a1: f64, a2: f64) -> WeightModel {
    WeightModel::duran_grunbaum(
        Mat::identity(2).scale(re(-0.5)),
        Mat::identity(2).scale(re(-0.5)),
        Mat::real_diag(&[a1, a2]),
    )
    .expect("valid diagonal parameters")
}

/// `x^A e^{Cx²/2}` for scalars.
pub fn freud_scalar(a: f64, c: f64) -> WeightModel {
    WeightModel::freud_ray(Mat::real_diag(&[a]), Mat::zeros(1), Mat::real_diag(&[c])).expect("valid Freud parameters")
}

/// One-sided Freud-ray data with `A = [[1, 1], [0, 1/2]]`, `B = 0`,
/// `C = −I − N/2`; `A` and `C` do not commute.
pub fn freud_noncommuting() -> WeightModel {
    let a = Mat::from_real_rows(&[&[1.0, 1.0], &[0.0, 0.5]]);
    let c = Mat::identity(2).scale(re(-1.0)) - nilpotent().scale(re(0.5));
    WeightModel::freud_ray(a, Mat::zeros(2), c).expect("valid Freud parameters")
}
