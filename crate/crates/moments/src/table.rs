use matbiorth_linalg::{Scalar, SquareMatrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentSource {
    Quadrature,
    Recurrence,
}

impl MomentSource {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentSource::Quadrature => "quadrature",
            MomentSource::Recurrence => "recurrence",
        }
    }
}

/// Moments `W_n = ∫₀^∞ xⁿ W(x) dx`, `n = 0..len`.
#[derive(Clone, Debug)]
pub struct MomentTable<T: Scalar = C64> {
    pub moments: Vec<SquareMatrix<T>>,
    pub source: Vec<MomentSource>,
    /// Largest estimated absolute error over the entries of each moment.
    pub err_est: Vec<f64>,
}

impl<T: Scalar> MomentTable<T> {
    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.moments[0].dim()
    }

    pub fn get(&self, n: usize) -> &SquareMatrix<T> {
        &self.moments[n]
    }

    pub fn cast<U: Scalar>(&self) -> MomentTable<U> {
        MomentTable {
            moments: self.moments.iter().map(|m| m.cast()).collect(),
            source: self.source.clone(),
            err_est: self.err_est.clone(),
        }
    }

    pub fn to_c64(&self) -> MomentTable<C64> {
        self.cast()
    }

    pub fn truncated(&self, len: usize) -> Self {
        MomentTable {
            moments: self.moments[..len].to_vec(),
            source: self.source[..len].to_vec(),
            err_est: self.err_est[..len].to_vec(),
        }
    }

    /// Every moment multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        MomentTable {
            moments: self.moments.iter().map(|m| m.scale(T::from_f64(c))).collect(),
            source: self.source.clone(),
            err_est: self.err_est.iter().map(|e| e * c.abs()).collect(),
        }
    }

    /// CSV header: `n`, then `W[i][j].re`, `W[i][j].im` in row-major order.
    pub fn csv_header(&self) -> Vec<String> {
        let n = self.dim();
        let mut h = vec!["n".to_string()];
        for i in 0..n {
            for j in 0..n {
                h.push(format!("W[{i}][{j}].re"));
                h.push(format!("W[{i}][{j}].im"));
            }
        }
        h
    }

    /// One row per moment: the index, then real and imaginary parts.
    pub fn csv_rows(&self) -> Vec<(usize, Vec<f64>)> {
        self.moments
            .iter()
            .enumerate()
            .map(|(k, m)| {
                (
                    k,
                    m.iter()
                        .flat_map(|v| {
                            let z = v.to_c64();
                            [z.re, z.im]
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

/// Per-moment comparison of two tables.
#[derive(Clone, Debug)]
pub struct CrossCheck {
    pub n: usize,
    /// Largest entrywise difference.
    pub delta: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Entrywise agreement to `max(10·err_est, 1e-9·max_abs(W_n))`, `err_est`
/// taken from `reference`.
pub fn cross_check<T: Scalar, U: Scalar>(reference: &MomentTable<T>, other: &MomentTable<U>) -> Vec<CrossCheck> {
    reference
        .moments
        .iter()
        .zip(&other.moments)
        .enumerate()
        .map(|(n, (a, b))| {
            let (a, b) = (a.to_c64(), b.to_c64());
            let delta = a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            let tolerance = (10.0 * reference.err_est[n]).max(1e-9 * a.max_abs());
            CrossCheck { n, delta, tolerance, pass: delta <= tolerance }
        })
        .collect()
}
