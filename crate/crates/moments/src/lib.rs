//! Moments of matrix weights on `[0, ∞)` by quadrature and by the Pearson
//! recurrence, and the block Hankel matrices built from them.

mod error;
pub mod hankel;
pub mod quadrature;
pub mod recurrence;
pub mod table;

use matbiorth_linalg::{Mat, C64};
use matbiorth_weights::WeightModel;

pub use error::MomentError;
pub use hankel::{block_moment_matrix, equilibrated_cond, BlockMoments, REGULARITY_BUDGET};
pub use quadrature::{integrate_ray, Integrand, QuadConfig, QuadResult};
pub use recurrence::moments_by_recurrence;
pub use table::{cross_check, CrossCheck, MomentSource, MomentTable};

/// `∫₀^∞ x^k W(x) dx` for `k = first..first + count`, one quadrature pass.
fn power_moments(
    model: &WeightModel,
    first: i32,
    count: usize,
    cfg: &QuadConfig,
) -> Result<(Vec<Mat>, Vec<f64>), MomentError> {
    let n = model.dim();
    let nn = n * n;
    let f = (count * nn, |x: f64, out: &mut [C64]| {
        let w = model.eval(x)?;
        let mut p = x.powi(first);
        for k in 0..count {
            for (o, v) in out[k * nn..(k + 1) * nn].iter_mut().zip(w.iter()) {
                *o = v * p;
            }
            p *= x;
        }
        Ok(())
    });
    let r = integrate_ray(&f, nn, &[], cfg)?;
    let mats = (0..count).map(|k| Mat::from_row_major(n, r.values[k * nn..(k + 1) * nn].to_vec())).collect();
    let errs = (0..count).map(|k| r.err[k * nn..(k + 1) * nn].iter().cloned().fold(0.0, f64::max)).collect();
    Ok((mats, errs))
}

/// `W_0..W_m` by adaptive quadrature to relative tolerance `rel_tol`.
pub fn moments_by_quadrature(model: &WeightModel, m: usize, rel_tol: f64) -> Result<MomentTable, MomentError> {
    let cfg = QuadConfig { rel_tol, ..QuadConfig::default() };
    let (moments, err_est) = power_moments(model, 0, m + 1, &cfg)?;
    Ok(MomentTable { moments, source: vec![MomentSource::Quadrature; m + 1], err_est })
}

/// `W_{−1} = ∫₀^∞ x^{-1} W(x) dx`, with its error estimate. Exists when the
/// exponent at the origin has spectrum in the right half plane.
pub fn inverse_moment(model: &WeightModel, rel_tol: f64) -> Result<(Mat, f64), MomentError> {
    let cfg = QuadConfig { rel_tol, ..QuadConfig::default() };
    let (mut m, e) = power_moments(model, -1, 1, &cfg)?;
    Ok((m.remove(0), e[0]))
}
