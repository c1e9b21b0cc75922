//! Adaptive Gauss–Legendre quadrature of vector-valued integrands on the ray
//! `[0, ∞)`.
//!
//! Panels grow geometrically towards the origin (to resolve `x^α` with
//! `α > −1`) and double in width towards infinity; panels whose two-half
//! refinement disagrees with the whole are split until every component meets
//! the tolerance.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use matbiorth_linalg::{par, C64};
use matbiorth_weights::WeightError;

use crate::error::MomentError;

pub const GL_ORDER: usize = 40;
const NEGLIGIBLE: f64 = 1e-3;
const MAX_ROUNDS: usize = 60;
const ORIGIN_FLOOR: f64 = 1e-300;
const TAIL_LIMIT: f64 = 1e5;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(GL_ORDER).expect("nonzero")).as_node_weight_pairs().to_vec()
    })
}

#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { rel_tol: 1e-13, max_panels: 4000 }
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub values: Vec<C64>,
    /// Per component: refinement deltas plus a rounding floor `4·eps·∫|f|`.
    pub err: Vec<f64>,
    pub panels: usize,
}

/// An integrand writing `width` complex components for each `x > 0`.
pub trait Integrand: Sync {
    fn width(&self) -> usize;
    fn eval(&self, x: f64, out: &mut [C64]) -> Result<(), WeightError>;
}

impl<F> Integrand for (usize, F)
where
    F: Fn(f64, &mut [C64]) -> Result<(), WeightError> + Sync,
{
    fn width(&self) -> usize {
        self.0
    }
    fn eval(&self, x: f64, out: &mut [C64]) -> Result<(), WeightError> {
        (self.1)(x, out)
    }
}

#[derive(Clone, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Vec<C64>,
    delta: Vec<f64>,
    l1: Vec<f64>,
}

fn gl<I: Integrand + ?Sized>(
    f: &I,
    a: f64,
    b: f64,
    value: &mut [C64],
    l1: &mut [f64],
    buf: &mut [C64],
) -> Result<(), WeightError> {
    let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
    for &(t, w) in rule() {
        let x = m + r * t;
        if x <= 0.0 {
            continue;
        }
        f.eval(x, buf)?;
        let wr = w * r;
        for ((v, l), y) in value.iter_mut().zip(l1.iter_mut()).zip(buf.iter()) {
            *v += y * wr;
            *l += y.norm() * wr;
        }
    }
    Ok(())
}

fn panel<I: Integrand + ?Sized>(f: &I, a: f64, b: f64) -> Result<Panel, WeightError> {
    let n = f.width();
    let mut buf = vec![C64::new(0.0, 0.0); n];
    let mut whole = vec![C64::new(0.0, 0.0); n];
    let mut scratch = vec![0.0; n];
    gl(f, a, b, &mut whole, &mut scratch, &mut buf)?;
    let mid = 0.5 * (a + b);
    let mut value = vec![C64::new(0.0, 0.0); n];
    let mut l1 = vec![0.0; n];
    gl(f, a, mid, &mut value, &mut l1, &mut buf)?;
    gl(f, mid, b, &mut value, &mut l1, &mut buf)?;
    let delta = whole.iter().zip(&value).map(|(w, v)| (w - v).norm()).collect();
    Ok(Panel { a, b, value, delta, l1 })
}

fn panels_for<I: Integrand + ?Sized>(f: &I, spans: &[(f64, f64)]) -> Result<Vec<Panel>, WeightError> {
    par::map(spans, |&(a, b)| panel(f, a, b)).into_iter().collect()
}

fn negligible(p: &Panel, total: &[C64], rel_tol: f64) -> bool {
    p.value.iter().zip(total).all(|(v, t)| v.norm() <= NEGLIGIBLE * rel_tol * t.norm() || v.norm() == 0.0)
}

/// Component scale used for the tolerance: the entry itself, floored by the
/// largest entry of its group (one moment matrix) times machine epsilon.
fn thresholds(total: &[C64], l1: &[f64], group: usize, rel_tol: f64) -> Vec<f64> {
    let mut th = vec![0.0; total.len()];
    for (g, chunk) in total.chunks(group).enumerate() {
        let s = chunk.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (k, v) in chunk.iter().enumerate() {
            let i = g * group + k;
            th[i] = rel_tol * v.norm() + 16.0 * f64::EPSILON * (l1[i] + s) + ORIGIN_FLOOR;
        }
    }
    th
}

/// `∫₀^∞ f(x) dx` componentwise. `group` components share a tolerance floor;
/// `breakpoints` are extra panel edges (for near-singular integrands).
pub fn integrate_ray<I: Integrand + ?Sized>(
    f: &I,
    group: usize,
    breakpoints: &[f64],
    cfg: &QuadConfig,
) -> Result<QuadResult, MomentError> {
    let n = f.width();
    let mut panels = panels_for(f, &[(0.5, 1.0), (1.0, 2.0)])?;
    let sum = |ps: &[Panel]| {
        let mut t = vec![C64::new(0.0, 0.0); n];
        for p in ps {
            for (t, v) in t.iter_mut().zip(&p.value) {
                *t += v;
            }
        }
        t
    };
    // towards the origin
    let mut a = 0.5;
    loop {
        let p = panels_for(f, &[(0.5 * a, a)])?.pop().expect("one panel");
        a *= 0.5;
        let small = negligible(&p, &sum(&panels), cfg.rel_tol) || a < 1e-200;
        panels.push(p);
        if small {
            panels.extend(panels_for(f, &[(0.0, a)])?);
            break;
        }
    }
    // towards infinity, several doublings at a time
    let mut b = 2.0;
    'tail: loop {
        let spans: Vec<(f64, f64)> = (0..4).map(|k| (b * 2f64.powi(k), b * 2f64.powi(k + 1))).collect();
        b *= 16.0;
        let new = panels_for(f, &spans)?;
        let total = sum(&panels);
        for p in new {
            let small = negligible(&p, &total, cfg.rel_tol);
            panels.push(p);
            if small {
                break 'tail;
            }
        }
        if b > TAIL_LIMIT {
            return Err(MomentError::QuadratureDivergence {
                panels: panels.len(),
                detail: "tail does not decay".into(),
            });
        }
    }
    for &x in breakpoints {
        if let Some(i) = panels.iter().position(|p| p.a < x && x < p.b && (x - p.a).min(p.b - x) > 1e-12 * p.b) {
            let p = panels.swap_remove(i);
            panels.extend(panels_for(f, &[(p.a, x), (x, p.b)])?);
        }
    }
    for _ in 0..MAX_ROUNDS {
        let total = sum(&panels);
        let mut l1 = vec![0.0; n];
        let mut delta = vec![0.0; n];
        for p in &panels {
            for i in 0..n {
                l1[i] += p.l1[i];
                delta[i] += p.delta[i];
            }
        }
        let th = thresholds(&total, &l1, group, cfg.rel_tol);
        if delta.iter().zip(&th).all(|(d, t)| d <= t) {
            let err = delta.iter().zip(&l1).map(|(d, l)| d + 4.0 * f64::EPSILON * l).collect();
            return Ok(QuadResult { values: total, err, panels: panels.len() });
        }
        // split every panel carrying a fair share of some failing component
        let np = panels.len() as f64;
        let failing: Vec<usize> = (0..n).filter(|&i| delta[i] > th[i]).collect();
        let (split, keep): (Vec<Panel>, Vec<Panel>) =
            panels.into_iter().partition(|p| failing.iter().any(|&i| p.delta[i] > 0.25 * th[i] / np));
        if split.is_empty() || keep.len() + 2 * split.len() > cfg.max_panels {
            let worst = failing.iter().map(|&i| delta[i] / th[i]).fold(0.0, f64::max);
            return Err(MomentError::QuadratureDivergence {
                panels: keep.len() + split.len(),
                detail: format!("error exceeds tolerance by a factor {worst:.2e}"),
            });
        }
        let spans: Vec<(f64, f64)> =
            split.iter().flat_map(|p| [(p.a, 0.5 * (p.a + p.b)), (0.5 * (p.a + p.b), p.b)]).collect();
        panels = keep;
        panels.extend(panels_for(f, &spans)?);
    }
    Err(MomentError::QuadratureDivergence { panels: panels.len(), detail: "refinement rounds exhausted".into() })
}
