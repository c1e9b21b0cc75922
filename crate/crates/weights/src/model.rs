use std::sync::Arc;

use matbiorth_linalg::{matrix_exp, matrix_power, re, Mat, MatPoly};

use crate::error::WeightError;
use crate::pearson::PearsonData;
use crate::series::{frobenius_eval, frobenius_series, taylor_radius, taylor_step};

const COMMUTE_TOL: f64 = 1e-12;
/// Largest x at which the Frobenius series is summed directly.
pub const FROBENIUS_RADIUS: f64 = 0.5;
pub const DEFAULT_FROBENIUS_TERMS: usize = 40;
/// Weight norms below this are flushed to zero.
const UNDERFLOW: f64 = 1e-280;
const CONTINUATION_LIMIT: f64 = 1e4;

/// How the weight is evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluator {
    /// `e^{A1 x} x^α e^{A2 x}`.
    DuranGrunbaum { a1: Mat, a2: Mat, alpha: Mat },
    /// `x^A e^{Bx + Cx²/2}`, closed form when `A, B, C` commute.
    FreudRay { a: Mat, b: Mat, c: Mat },
    /// Frobenius series near the origin; with `continuation` the solution is
    /// carried along the ray by Taylor steps.
    Frobenius { k_terms: usize, continuation: bool },
}

#[derive(Clone, Debug)]
enum Kind {
    ClosedDg { a1: Mat, a2: Mat, alpha: Mat, half: Mat },
    ClosedFreud { a: Mat, b: Mat, c: Mat },
    Series(Arc<SeriesEvaluator>),
}

/// A matrix weight on `[0, ∞)`.
#[derive(Clone, Debug)]
pub struct WeightModel {
    pearson: PearsonData,
    evaluator: Evaluator,
    kind: Kind,
    scale: f64,
}

impl WeightModel {
    /// `W(x) = e^{A1 x} x^α e^{A2 x}` with the symmetric split
    /// `hL = α/2 + A1 z`, `hR = α/2 + A2 z`.
    pub fn duran_grunbaum(a1: Mat, a2: Mat, alpha: Mat) -> Result<Self, WeightError> {
        for (name, m) in [("A1", &a1), ("A2", &a2)] {
            let c = alpha.commutator(m).norm();
            if c > COMMUTE_TOL * (1.0 + alpha.norm() * m.norm()) {
                return Err(WeightError::NonCommuting(format!("[alpha, {name}] has norm {c:.3e}")));
            }
        }
        let n = alpha.dim();
        let half = alpha.scale(re(0.5));
        let pearson = PearsonData::new(
            MatPoly::new(vec![half.clone(), a1.clone()]),
            MatPoly::new(vec![half.clone(), a2.clone()]),
            Mat::identity(n),
            Mat::identity(n),
        )?;
        Ok(WeightModel {
            pearson,
            evaluator: Evaluator::DuranGrunbaum { a1: a1.clone(), a2: a2.clone(), alpha: alpha.clone() },
            kind: Kind::ClosedDg { a1, a2, alpha, half },
            scale: 1.0,
        })
    }

    /// One-sided data `hL = A + Bz + Cz²`, `hR = 0`, normalized so that
    /// `W(x) = x^A (I + O(x))`.
    pub fn freud_ray(a: Mat, b: Mat, c: Mat) -> Result<Self, WeightError> {
        let pearson = PearsonData::left(MatPoly::new(vec![a.clone(), b.clone(), c.clone()]))?;
        let scale = 1.0 + a.norm() + b.norm() + c.norm();
        let commuting = [a.commutator(&b), a.commutator(&c), b.commutator(&c)]
            .iter()
            .all(|m| m.norm() <= COMMUTE_TOL * scale * scale);
        let evaluator = Evaluator::FreudRay { a: a.clone(), b: b.clone(), c: c.clone() };
        let kind = if commuting {
            Kind::ClosedFreud { a, b, c }
        } else {
            Kind::Series(Arc::new(SeriesEvaluator::new(&pearson, DEFAULT_FROBENIUS_TERMS, true)?))
        };
        Ok(WeightModel { pearson, evaluator, kind, scale: 1.0 })
    }

    /// Weight known only through its Pearson data.
    pub fn pearson(pearson: PearsonData, k_terms: usize, continuation: bool) -> Result<Self, WeightError> {
        let series = SeriesEvaluator::new(&pearson, k_terms, continuation)?;
        Ok(WeightModel {
            pearson,
            evaluator: Evaluator::Frobenius { k_terms, continuation },
            kind: Kind::Series(Arc::new(series)),
            scale: 1.0,
        })
    }

    pub fn pearson_data(&self) -> &PearsonData {
        &self.pearson
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.evaluator
    }

    pub fn dim(&self) -> usize {
        self.pearson.dim()
    }

    pub fn scale_factor(&self) -> f64 {
        self.scale
    }

    /// The same weight multiplied by the scalar `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut m = self.clone();
        m.scale *= c;
        m.pearson.w0_l = m.pearson.w0_l.scale(re(c));
        m
    }

    /// Replaces the Pearson data without any consistency check; used to
    /// build negative controls.
    pub fn with_pearson_unchecked(&self, pearson: PearsonData) -> Self {
        WeightModel { pearson, ..self.clone() }
    }

    /// Symmetric in the sense `W(x)ᵀ = W(x)` at a few sample points.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        [0.3, 1.0, 2.7].iter().all(|&x| match self.eval(x) {
            Ok(w) => w.dist(&w.transpose()) <= tol * w.norm().max(f64::MIN_POSITIVE),
            Err(_) => false,
        })
    }

    /// `W(x)` for `x > 0`, with the real logarithm on the positive axis.
    pub fn eval(&self, x: f64) -> Result<Mat, WeightError> {
        let (l, r) = self.eval_factors(x)?;
        Ok(l * r)
    }

    /// The factors `WL(x)`, `WR(x)` with `W = WL WR`.
    pub fn eval_factors(&self, x: f64) -> Result<(Mat, Mat), WeightError> {
        if !(x > 0.0) {
            return Err(WeightError::NonPositiveArgument(x));
        }
        let z = re(x);
        let (l, r) = match &self.kind {
            Kind::ClosedDg { a1, a2, half, .. } => {
                let p = matrix_power(half, z)?;
                (matrix_exp(&a1.scale(z)) * &p, p * matrix_exp(&a2.scale(z)))
            }
            Kind::ClosedFreud { a, b, c } => {
                let e = b.scale(z) + c.scale(re(0.5 * x * x));
                (matrix_power(a, z)? * matrix_exp(&e), Mat::identity(a.dim()))
            }
            Kind::Series(s) => s.eval(x)?,
        };
        Ok((l.scale(re(self.scale)), r))
    }

    /// The closed-form composition used for Durán–Grünbaum weights, for
    /// comparison against [`WeightModel::eval`].
    pub fn duran_grunbaum_product(&self, x: f64) -> Option<Mat> {
        match &self.kind {
            Kind::ClosedDg { a1, a2, alpha, .. } => {
                let z = re(x);
                let w = matrix_exp(&a1.scale(z)) * matrix_power(alpha, z).ok()? * matrix_exp(&a2.scale(z));
                Some(w.scale(re(self.scale)))
            }
            _ => None,
        }
    }
}

/// Frobenius series near the origin plus Taylor checkpoints along the ray.
#[derive(Debug)]
struct SeriesEvaluator {
    h_l: MatPoly,
    /// `hRᵀ`: the right factor is the transpose of a left solution.
    h_rt: MatPoly,
    hs_l: Vec<Mat>,
    hs_rt: Vec<Mat>,
    w0_l: Mat,
    w0_rt: Mat,
    continuation: bool,
    checkpoints: Vec<(f64, Mat, Mat)>,
    cutoff: f64,
}

impl SeriesEvaluator {
    fn new(p: &PearsonData, k_terms: usize, continuation: bool) -> Result<Self, WeightError> {
        let h_rt = p.h_r.transpose();
        let mut s = SeriesEvaluator {
            hs_l: frobenius_series(&p.h_l, k_terms)?,
            hs_rt: frobenius_series(&h_rt, k_terms)?,
            h_l: p.h_l.clone(),
            h_rt,
            w0_l: p.w0_l.clone(),
            w0_rt: p.w0_r.transpose(),
            continuation,
            checkpoints: Vec::new(),
            cutoff: FROBENIUS_RADIUS,
        };
        if continuation {
            s.build_checkpoints()?;
        }
        Ok(s)
    }

    fn series(&self, x: f64) -> Result<(Mat, Mat), WeightError> {
        let z = re(x);
        let l = frobenius_eval(&self.h_l, &self.hs_l, &self.w0_l, z)?;
        let rt = frobenius_eval(&self.h_rt, &self.hs_rt, &self.w0_rt, z)?;
        Ok((l, rt))
    }

    fn build_checkpoints(&mut self) -> Result<(), WeightError> {
        let mut c = FROBENIUS_RADIUS;
        let (mut l, mut rt) = self.series(c)?;
        loop {
            let step = taylor_radius(&self.h_l, c).min(taylor_radius(&self.h_rt, c));
            self.checkpoints.push((c, l.clone(), rt.clone()));
            if l.norm() * rt.norm() < UNDERFLOW || c > CONTINUATION_LIMIT {
                break;
            }
            l = taylor_step(&self.h_l, re(c), &l, re(step));
            rt = taylor_step(&self.h_rt, re(c), &rt, re(step));
            c += step;
        }
        self.cutoff = c;
        Ok(())
    }

    fn eval(&self, x: f64) -> Result<(Mat, Mat), WeightError> {
        let n = self.h_l.dim();
        if x <= FROBENIUS_RADIUS {
            let (l, rt) = self.series(x)?;
            return Ok((l, rt.transpose()));
        }
        if !self.continuation {
            return Err(WeightError::UnsupportedEvaluator { x });
        }
        if x >= self.cutoff {
            if self.cutoff > CONTINUATION_LIMIT {
                return Err(WeightError::UnsupportedEvaluator { x });
            }
            return Ok((Mat::zeros(n), Mat::zeros(n)));
        }
        let i = self.checkpoints.partition_point(|(c, _, _)| *c <= x) - 1;
        let (c, l, rt) = &self.checkpoints[i];
        let t = re(x - c);
        let l = taylor_step(&self.h_l, re(*c), l, t);
        let rt = taylor_step(&self.h_rt, re(*c), rt, t);
        Ok((l, rt.transpose()))
    }
}
