use matbiorth_biorth::{BiorthError, SecondKindEvaluator};
use matbiorth_linalg::{Block, Mat, C64};
use matbiorth_weights::Side;

use crate::error::RhpError;

/// `Y_n` with its first two derivatives at one point.
///
/// Left: `[[P_n, Q_n], [−C_{n−1} P_{n−1}, −C_{n−1} Q_{n−1}]]`.
/// Right: `[[P_n, −P_{n−1} C_{n−1}], [Q_n, −Q_{n−1} C_{n−1}]]`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub n: usize,
    pub side: Side,
    pub z: C64,
    pub y: Block,
    pub dy: Block,
    pub d2y: Block,
}

/// Frames for every `n = 1..=n_max + 1` at one point, sharing one quadrature.
#[derive(Clone, Debug)]
pub struct FrameSet {
    pub z: C64,
    pub side: Side,
    frames: Vec<Frame>,
    /// Largest quadrature error estimate behind the second kind values.
    pub quad_err: f64,
}

impl FrameSet {
    pub fn at(ev: &SecondKindEvaluator, z: C64, side: Side) -> Result<Self, RhpError> {
        let sys = ev.system();
        let top = sys.n_max + 1;
        let q = ev.eval_all(z, side)?;
        let p = match side {
            Side::Left => sys.left_values(z, top),
            Side::Right => sys.right_values(z, top),
        };
        let frames = (1..=top)
            .map(|n| {
                let c = &sys.c[n - 1];
                let qs = [&q.q, &q.dq, &q.d2q];
                let [y, dy, d2y] = std::array::from_fn(|d| {
                    let (pn, pm, qn, qm) = (&p[n][d], &p[n - 1][d], &qs[d][n], &qs[d][n - 1]);
                    match side {
                        Side::Left => Block::new(pn.clone(), qn.clone(), -(c * pm), -(c * qm)),
                        Side::Right => Block::new(pn.clone(), -(pm * c), qn.clone(), -(qm * c)),
                    }
                });
                Frame { n, side, z, y, dy, d2y }
            })
            .collect();
        Ok(FrameSet { z, side, frames, quad_err: q.err })
    }

    pub fn top(&self) -> usize {
        self.frames.len()
    }

    pub fn get(&self, n: usize) -> Result<&Frame, RhpError> {
        if n == 0 || n > self.frames.len() {
            return Err(RhpError::DegreeOutOfRange { n, lo: 1, hi: self.frames.len() });
        }
        Ok(&self.frames[n - 1])
    }
}

/// `Y_n(z)` for one degree and side.
pub fn assemble_y(ev: &SecondKindEvaluator, n: usize, side: Side, z: C64) -> Result<Frame, RhpError> {
    let top = ev.system().n_max + 1;
    if n == 0 || n > top {
        return Err(RhpError::Biorth(BiorthError::DegreeOutOfRange { n, n_max: top }));
    }
    Ok(FrameSet::at(ev, z, side)?.get(n)?.clone())
}

/// `diag(a, d)` for N×N blocks.
pub(crate) fn bdiag(a: Mat, d: Mat) -> Block {
    Block::diag(a, d)
}
