use matbiorth_linalg::{Mat, C64};
use matbiorth_moments::{integrate_ray, QuadConfig};
use matbiorth_weights::{Side, WeightModel};

use crate::error::BiorthError;
use crate::system::BiorthSystem;

/// Cauchy integrals are refused closer than this to `[0, ∞)`.
pub const MIN_DISTANCE: f64 = 0.01;

pub fn distance_to_ray(z: C64) -> f64 {
    if z.re >= 0.0 {
        z.im.abs()
    } else {
        z.norm()
    }
}

/// `Q_n`, `Q_n'`, `Q_n''` for `n = 0..=n_max + 1` at one point.
#[derive(Clone, Debug)]
pub struct SecondKindValues {
    pub z: C64,
    pub q: Vec<Mat>,
    pub dq: Vec<Mat>,
    pub d2q: Vec<Mat>,
    /// Largest quadrature error estimate over all entries.
    pub err: f64,
}

/// Second kind functions `Q_nᴸ(z) = ∫ P_nᴸ(x) W(x) / (x − z) dx` and
/// `Q_nᴿ(z) = ∫ W(x) P_nᴿ(x) / (x − z) dx`; derivatives come from the
/// differentiated kernels.
#[derive(Clone, Debug)]
pub struct SecondKindEvaluator {
    sys: BiorthSystem,
    model: WeightModel,
    cfg: QuadConfig,
}

impl SecondKindEvaluator {
    pub fn new(sys: BiorthSystem, model: WeightModel, cfg: QuadConfig) -> Self {
        SecondKindEvaluator { sys, model, cfg }
    }

    pub fn system(&self) -> &BiorthSystem {
        &self.sys
    }

    pub fn model(&self) -> &WeightModel {
        &self.model
    }

    pub fn eval_all(&self, z: C64, side: Side) -> Result<SecondKindValues, BiorthError> {
        let dist = distance_to_ray(z);
        if dist < MIN_DISTANCE {
            return Err(BiorthError::TooCloseToSupport { dist, min: MIN_DISTANCE });
        }
        let dim = self.sys.dim();
        let nn = dim * dim;
        let count = self.sys.n_max + 2;
        let shifts: Vec<usize> = (0..count).map(|n| self.kernel_shift(n, z)).collect();
        let f = (3 * nn * count, |x: f64, out: &mut [C64]| {
            let w = self.model.eval(x)?;
            let xc = C64::new(x, 0.0);
            let vals = match side {
                Side::Left => self.sys.left_values(xc, count - 1),
                Side::Right => self.sys.right_values(xc, count - 1),
            };
            let k1 = C64::new(1.0, 0.0) / (xc - z);
            let kernels = [k1, k1 * k1, k1 * k1 * k1 * 2.0];
            let ratio = xc / z;
            for (n, v) in vals.iter().enumerate() {
                let pw = match side {
                    Side::Left => &v[0] * &w,
                    Side::Right => &w * &v[0],
                }
                .scale(ratio.powu(shifts[n] as u32));
                for (d, k) in kernels.iter().enumerate() {
                    let base = (n * 3 + d) * nn;
                    for (o, e) in out[base..base + nn].iter_mut().zip(pw.iter()) {
                        *o = e * k;
                    }
                }
            }
            Ok(())
        });
        let breaks: Vec<f64> = if z.re > 0.0 {
            [z.re - z.im.abs(), z.re, z.re + z.im.abs()].into_iter().filter(|&b| b > 0.0).collect()
        } else {
            Vec::new()
        };
        let r = integrate_ray(&f, nn, &breaks, &self.cfg)?;
        let block =
            |n: usize, d: usize| Mat::from_row_major(dim, r.values[(n * 3 + d) * nn..(n * 3 + d + 1) * nn].to_vec());
        let zi = C64::new(1.0, 0.0) / z;
        let mut q = Vec::with_capacity(count);
        let mut dq = Vec::with_capacity(count);
        let mut d2q = Vec::with_capacity(count);
        for (n, &m) in shifts.iter().enumerate() {
            let (j0, j1, j2) = (block(n, 0), block(n, 1), block(n, 2));
            let m = m as f64;
            dq.push(&j1 - j0.scale(zi * m));
            d2q.push(j0.scale(zi * zi * m * (m + 1.0)) - j1.scale(zi * 2.0 * m) + &j2);
            q.push(j0);
        }
        Ok(SecondKindValues { z, q, dq, d2q, err: r.err.iter().cloned().fold(0.0, f64::max) })
    }

    /// Far from the bulk of `P_n W` the kernel is replaced by
    /// `(x/z)^n / (x − z)`, which differs from `1/(x − z)` by a polynomial of
    /// degree below `n` in `x` and so leaves `Q_n` unchanged; it avoids
    /// cancelling the first `n` terms of the expansion at infinity.
    fn kernel_shift(&self, n: usize, z: C64) -> usize {
        let beta = &self.sys.beta_l[n.min(self.sys.beta_l.len() - 1)];
        if z.norm() >= 2.0 * beta.norm().max(1.0) {
            n
        } else {
            0
        }
    }

    /// `Q_n(z)` alone.
    pub fn eval(&self, n: usize, z: C64, side: Side) -> Result<Mat, BiorthError> {
        if n > self.sys.n_max + 1 {
            return Err(BiorthError::DegreeOutOfRange { n, n_max: self.sys.n_max + 1 });
        }
        Ok(self.eval_all(z, side)?.q.swap_remove(n))
    }

    /// Three terms of the expansion at infinity:
    /// `−C_n⁻¹(z^{−n−1} + q¹ z^{−n−2} + q² z^{−n−3})` on the left and
    /// `−(z^{−n−1} + q¹ z^{−n−2} + q² z^{−n−3}) C_n⁻¹` on the right.
    pub fn asymptotic(&self, n: usize, z: C64, side: Side) -> Mat {
        let s = &self.sys;
        let dim = s.dim();
        let zi = C64::new(1.0, 0.0) / z;
        let lead = zi.powu(n as u32 + 1);
        let (q1, q2) = match side {
            Side::Left => (&s.q1_l[n], &s.q2_l[n]),
            Side::Right => (&s.q1_r[n], &s.q2_r[n]),
        };
        let series = (Mat::identity(dim) + q1.scale(zi) + q2.scale(zi * zi)).scale(-lead);
        match side {
            Side::Left => &s.c_inv[n] * series,
            Side::Right => series * &s.c_inv[n],
        }
    }
}
