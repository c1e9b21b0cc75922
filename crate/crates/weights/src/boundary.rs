//! Boundary behaviour of a weight and the second order equations it
//! satisfies.

use matbiorth_linalg::{re, Mat};

use crate::error::WeightError;
use crate::model::WeightModel;

pub const BOUNDARY_TOL: f64 = 1e-6;
const NEAR_ZERO: [f64; 6] = [1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];
const NEAR_INFINITY: [f64; 3] = [50.0, 100.0, 200.0];
/// Step of the five point stencils in the second order residual.
pub const SECOND_ORDER_STEP: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct BoundaryCondition {
    pub name: &'static str,
    /// `(x, ‖f(x)‖)` approaching the origin.
    pub near_zero: Vec<(f64, f64)>,
    pub near_infinity: Vec<(f64, f64)>,
    pub limit_zero: f64,
    pub limit_infinity: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub conditions: Vec<BoundaryCondition>,
}

impl BoundaryReport {
    pub fn pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }
}

/// Values and first two derivatives of `f` at `x` from the five samples
/// `f(x + k·h)`, `k = −2..2`.
fn stencil(f: impl Fn(f64) -> Result<Mat, WeightError>, x: f64, h: f64) -> Result<[Mat; 3], WeightError> {
    let s = [f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?];
    let d1 = (&s[0] - &s[4] + (&s[3] - &s[1]).scale(re(8.0))).scale(re(1.0 / (12.0 * h)));
    let d2 = ((&s[1] + &s[3]).scale(re(16.0)) - &s[0] - &s[4] - s[2].scale(re(30.0))).scale(re(1.0 / (12.0 * h * h)));
    Ok([s[2].clone(), d1, d2])
}

/// The three expressions `zW`, `(zW)' − aL W`, `(zW)' − W aR` at `x`.
fn boundary_terms(model: &WeightModel, x: f64) -> Result<[Mat; 3], WeightError> {
    let p = model.pearson_data();
    let h = 1e-2 * x.min(1.0);
    let [zw, dzw, _] = stencil(|t| Ok(model.eval(t)?.scale(re(t))), x, h)?;
    let w = model.eval(x)?;
    let al = p.a_left().eval(re(x));
    let ar = p.a_right().eval(re(x));
    Ok([zw, &dzw - al * &w, &dzw - &w * ar])
}

/// Aitken extrapolation of the last three samples of a sequence converging
/// geometrically; falls back to the last sample.
fn extrapolate(v: &[f64]) -> f64 {
    let n = v.len();
    let (a, b, c) = (v[n - 3], v[n - 2], v[n - 1]);
    let d = (c - b) - (b - a);
    if d.abs() <= 1e-300 || !d.is_finite() {
        return c;
    }
    let lim = c - (c - b) * (c - b) / d;
    if lim.is_finite() {
        lim.abs().min(c)
    } else {
        c
    }
}

pub fn check_boundary_conditions(model: &WeightModel) -> Result<BoundaryReport, WeightError> {
    let scale = [0.5, 1.0, 2.0]
        .iter()
        .map(|&x| model.eval(x).map(|w| w.norm()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(1.0, f64::max);
    let sample = |xs: &[f64]| -> Result<Vec<(f64, [f64; 3])>, WeightError> {
        xs.iter().map(|&x| boundary_terms(model, x).map(|t| (x, [t[0].norm(), t[1].norm(), t[2].norm()]))).collect()
    };
    let zero = sample(&NEAR_ZERO)?;
    let inf = sample(&NEAR_INFINITY)?;
    let names = ["zW", "(zW)' - aL W", "(zW)' - W aR"];
    let tolerance = BOUNDARY_TOL * scale;
    let conditions = (0..3)
        .map(|k| {
            let near_zero: Vec<(f64, f64)> = zero.iter().map(|(x, v)| (*x, v[k])).collect();
            let near_infinity: Vec<(f64, f64)> = inf.iter().map(|(x, v)| (*x, v[k])).collect();
            let limit_zero = extrapolate(&near_zero.iter().map(|p| p.1).collect::<Vec<_>>());
            let limit_infinity = near_infinity.last().map_or(0.0, |p| p.1);
            BoundaryCondition {
                name: names[k],
                pass: limit_zero <= tolerance && limit_infinity <= tolerance,
                near_zero,
                near_infinity,
                limit_zero,
                limit_infinity,
                tolerance,
            }
        })
        .collect();
    Ok(BoundaryReport { conditions })
}

/// Residuals of `(zW)'' − (aL W)' + bL W − W bR` and
/// `(zW)'' − (W aR)' + W bR − bL W` by five point stencils.
pub fn weight_second_order_residual(model: &WeightModel, x: f64) -> Result<(Mat, Mat), WeightError> {
    let p = model.pearson_data();
    let h = SECOND_ORDER_STEP;
    let (al, ar) = (p.a_left(), p.a_right());
    let (bl, br) = (p.b_left(), p.b_right());
    let [_, _, zw2] = stencil(|t| Ok(model.eval(t)?.scale(re(t))), x, h)?;
    let [_, alw1, _] = stencil(|t| Ok(al.eval(re(t)) * model.eval(t)?), x, h)?;
    let [w, war1, _] = stencil(|t| Ok(model.eval(t)? * ar.eval(re(t))), x, h)?;
    let blx = bl.eval(re(x)).expect("x > 0");
    let brx = br.eval(re(x)).expect("x > 0");
    let r1 = &zw2 - alw1 + &blx * &w - &w * &brx;
    let r2 = zw2 - war1 + &w * brx - blx * w;
    Ok((r1, r2))
}

/// `‖x W'(x) − hL W − W hR‖ / ‖W‖` with `W'` from a five point stencil.
pub fn pearson_residual(model: &WeightModel, x: f64) -> Result<f64, WeightError> {
    let p = model.pearson_data();
    let [w, d1, _] = stencil(|t| model.eval(t), x, 1e-3 * x.min(1.0))?;
    let z = re(x);
    let r = d1.scale(z) - p.h_l.eval(z) * &w - &w * p.h_r.eval(z);
    Ok(r.norm() / w.norm().max(f64::MIN_POSITIVE))
}
