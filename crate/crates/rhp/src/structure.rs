use matbiorth_biorth::{BiorthSystem, SecondKindEvaluator};
use matbiorth_linalg::{Block, Mat, C64};
use matbiorth_weights::{LocalFundamental, PearsonData, Side};

use crate::blockpoly::BlockPoly;
use crate::error::RhpError;
use crate::frame::{bdiag, Frame, FrameSet};

/// `M̃ₙ = z Mₙ`, a polynomial in `z`; `Mₙ` has at most a simple pole at the
/// origin with residue `M̃ₙ(0)`.
#[derive(Clone, Debug)]
pub struct StructureMatrix {
    pub n: usize,
    pub side: Side,
    pub mtilde: BlockPoly,
}

impl StructureMatrix {
    pub fn eval(&self, z: C64) -> Block {
        self.mtilde.eval(z)
    }

    /// Coefficient of `1/z` in `Mₙ`.
    pub fn pole_residue(&self) -> Block {
        self.mtilde.coeff(0)
    }

    /// `N(M̃ₙ)(z)`.
    pub fn n_transform_at(&self, z: C64) -> Block {
        self.mtilde.n_transform_at(z)
    }

    pub fn degree(&self) -> usize {
        self.mtilde.coeffs.len() - 1
    }
}

fn check_degree(sys: &BiorthSystem, n: usize) -> Result<(), RhpError> {
    if n == 0 || n > sys.n_max {
        return Err(RhpError::DegreeOutOfRange { n, lo: 1, hi: sys.n_max });
    }
    Ok(())
}

/// Left structure matrix from the large-`z` expansions.
///
/// With `Yₙ = S(z) diag(zⁿ, z⁻ⁿ)` and `S = I + S₁/z + S₂/z² + ⋯`,
/// `M̃ₙ` is the polynomial part of `S diag(nI + hᴸ, −nI − hᴿ) S⁻¹`; two terms
/// of `S` and `S⁻¹` suffice for Pearson data of degree two.
pub fn structure_matrix_explicit(
    sys: &BiorthSystem,
    pearson: &PearsonData,
    n: usize,
) -> Result<StructureMatrix, RhpError> {
    check_degree(sys, n)?;
    let deg = pearson.degree();
    if deg > 2 {
        return Err(RhpError::Precondition(format!("Pearson degree {deg} above 2")));
    }
    let dim = sys.dim();
    let ci = &sys.c_inv[n];
    let cm = &sys.c[n - 1];
    let s = [
        Block::identity(dim),
        Block::new(sys.p1_l[n].clone(), -ci, -cm, sys.q1_l[n - 1].clone()),
        Block::new(sys.p2_l[n].clone(), -(ci * &sys.q1_l[n]), -(cm * &sys.p1_l[n - 1]), sys.q2_l[n - 1].clone()),
    ];
    let sinv = [
        Block::identity(dim),
        Block::new(sys.q1_r[n - 1].clone(), ci.clone(), cm.clone(), sys.p1_r[n].clone()),
        Block::new(sys.q2_r[n - 1].clone(), &sys.q1_r[n] * ci, &sys.p1_r[n - 1] * cm, sys.p2_r[n].clone()),
    ];
    let nn = Mat::scalar(dim, C64::new(n as f64, 0.0));
    let h: Vec<Block> = (0..=deg)
        .map(|c| {
            let (mut a, mut d) = (pearson.h_l.coeff(c), -pearson.h_r.coeff(c));
            if c == 0 {
                a += &nn;
                d -= &nn;
            }
            Block::new(a, Mat::zeros(dim), Mat::zeros(dim), d)
        })
        .collect();
    let mut coeffs = vec![Block::zeros(dim); deg + 1];
    for (c, hc) in h.iter().enumerate() {
        for (a, sa) in s.iter().enumerate() {
            for (b, sb) in sinv.iter().enumerate() {
                if a + b <= c {
                    let m = c - a - b;
                    coeffs[m] = &coeffs[m] + &(&(sa * hc) * sb);
                }
            }
        }
    }
    Ok(StructureMatrix { n, side: Side::Left, mtilde: BlockPoly::new(coeffs) })
}

/// `M̃ₙᴿ = −J M̃ₙᴸ J⁻¹`.
pub fn structure_matrix_explicit_right(
    sys: &BiorthSystem,
    pearson: &PearsonData,
    n: usize,
) -> Result<StructureMatrix, RhpError> {
    let left = structure_matrix_explicit(sys, pearson, n)?;
    let dim = sys.dim();
    let mtilde = left.mtilde.conjugate(&Block::j(dim), &Block::j_inv(dim)).scale(C64::new(-1.0, 0.0));
    Ok(StructureMatrix { n, side: Side::Right, mtilde })
}

/// `M̃ₙ(z)` from `Y`, `Y'` at one point:
/// `z Y'Y⁻¹ + Y diag(hᴸ, −hᴿ) Y⁻¹` on the left and
/// `z Y⁻¹Y' + Y⁻¹ diag(hᴿ, −hᴸ) Y` on the right.
pub fn structure_matrix_from_frame(frame: &Frame, pearson: &PearsonData) -> Result<Block, RhpError> {
    let z = frame.z;
    let inv = frame.y.inverse()?;
    let (hl, hr) = (pearson.h_l.eval(z), pearson.h_r.eval(z));
    Ok(match frame.side {
        Side::Left => &(&frame.dy * &inv).scale(z) + &(&(&frame.y * &bdiag(hl, -hr)) * &inv),
        Side::Right => &(&inv * &frame.dy).scale(z) + &(&(&inv * &bdiag(hr, -hl)) * &frame.y),
    })
}

/// `z Z'(z) Z(z)⁻¹` (left) or `z Z(z)⁻¹ Z'(z)` (right) with `Z'` from central
/// differences and one Richardson step, where `Zᴸ = Y diag(Φᴸ, (Φᴿ)⁻¹)`,
/// `Zᴿ = diag(Φᴿ, (Φᴸ)⁻¹) Y` and `Φ` are local solutions of the Pearson
/// factor equations with `Φ(z) = I`. Returns the matrix and the truncation
/// estimate.
pub fn structure_matrix_numeric(
    ev: &SecondKindEvaluator,
    n: usize,
    side: Side,
    z: C64,
    step: f64,
) -> Result<(Block, f64), RhpError> {
    let at = |w: C64| FrameSet::at(ev, w, side);
    let stencil = Stencil {
        center: at(z)?,
        plus: [at(z + step)?, at(z + step / 2.0)?],
        minus: [at(z - step)?, at(z - step / 2.0)?],
        step,
    };
    stencil.structure_matrix(n, ev.model().pearson_data())
}

/// Frame sets at `z`, `z ± h`, `z ± h/2` for one side.
#[derive(Clone, Debug)]
pub struct Stencil {
    pub center: FrameSet,
    pub plus: [FrameSet; 2],
    pub minus: [FrameSet; 2],
    pub step: f64,
}

impl Stencil {
    pub fn at(ev: &SecondKindEvaluator, z: C64, side: Side, step: f64) -> Result<Self, RhpError> {
        let f = |w: C64| FrameSet::at(ev, w, side);
        Ok(Stencil {
            center: f(z)?,
            plus: [f(z + step)?, f(z + step / 2.0)?],
            minus: [f(z - step)?, f(z - step / 2.0)?],
            step,
        })
    }

    /// Finite-difference structure matrix of degree `n`; see
    /// [`structure_matrix_numeric`].
    pub fn structure_matrix(&self, n: usize, pearson: &PearsonData) -> Result<(Block, f64), RhpError> {
        let z = self.center.z;
        let side = self.center.side;
        let phi_l = LocalFundamental::new(&pearson.h_l, z, Side::Left);
        let phi_r = LocalFundamental::new(&pearson.h_r, z, Side::Right);
        let zmat = |fs: &FrameSet| -> Result<Block, RhpError> {
            let w = fs.z;
            let y = &fs.get(n)?.y;
            let (l, r) = (phi_l.eval(w), phi_r.eval(w));
            Ok(match side {
                Side::Left => y * &bdiag(l, r.inverse()?),
                Side::Right => &bdiag(r, l.inverse()?) * y,
            })
        };
        let h = self.step;
        let coarse = (&zmat(&self.plus[0])? - &zmat(&self.minus[0])?).scale(C64::new(0.5 / h, 0.0));
        let fine = (&zmat(&self.plus[1])? - &zmat(&self.minus[1])?).scale(C64::new(1.0 / h, 0.0));
        let dz = &fine.scale(C64::new(4.0 / 3.0, 0.0)) - &coarse.scale(C64::new(1.0 / 3.0, 0.0));
        let inv = zmat(&self.center)?.inverse()?;
        let m = match side {
            Side::Left => (&dz * &inv).scale(z),
            Side::Right => (&inv * &dz).scale(z),
        };
        let err = fine.dist(&coarse) / 3.0 * inv.norm() * z.norm();
        Ok((m, err))
    }

    /// Analytic `Y'` against the Richardson difference: relative mismatch and
    /// truncation estimate.
    pub fn derivative_consistency(&self, n: usize) -> Result<(f64, f64), RhpError> {
        let h = self.step;
        let c = self.center.get(n)?;
        let coarse = (&self.plus[0].get(n)?.y - &self.minus[0].get(n)?.y).scale(C64::new(0.5 / h, 0.0));
        let fine = (&self.plus[1].get(n)?.y - &self.minus[1].get(n)?.y).scale(C64::new(1.0 / h, 0.0));
        let d = &fine.scale(C64::new(4.0 / 3.0, 0.0)) - &coarse.scale(C64::new(1.0 / 3.0, 0.0));
        let scale = c.dy.norm().max(f64::MIN_POSITIVE);
        Ok((c.dy.dist(&d) / scale, fine.dist(&coarse) / 3.0 / scale))
    }
}

/// Points of the residue circle: `r e^{i(π/8 + 2πk/8)}`, `k = 0..8`.
pub fn residue_circle(r: f64) -> Vec<C64> {
    (0..8).map(|k| C64::from_polar(r, std::f64::consts::PI * (1.0 + 2.0 * k as f64) / 8.0)).collect()
}

/// Coefficient of `1/z` in `Mₙ` from the trapezoidal rule on a circle
/// about the origin: the mean of `z Mₙ(z) = M̃ₙ(z)` over the circle points.
pub fn residue_from_frames(frames: &[Frame], pearson: &PearsonData) -> Result<Block, RhpError> {
    let dim = pearson.dim();
    let mut acc = Block::zeros(dim);
    for f in frames {
        acc = &acc + &structure_matrix_from_frame(f, pearson)?;
    }
    Ok(acc.scale(C64::new(1.0 / frames.len() as f64, 0.0)))
}

/// Coefficientwise `M̃_{n+1} Tₙ − Tₙ M̃ₙ − z diag(I, 0)` (left) or
/// `Tₙ M̃_{n+1} − M̃ₙ Tₙ − z diag(I, 0)` (right), relative to the largest
/// product coefficient.
pub fn zero_curvature_residual(
    sys: &BiorthSystem,
    pearson: &PearsonData,
    n: usize,
    side: Side,
) -> Result<f64, RhpError> {
    if n + 1 > sys.n_max {
        return Err(RhpError::DegreeOutOfRange { n, lo: 1, hi: sys.n_max.saturating_sub(1) });
    }
    let (m0, m1) = match side {
        Side::Left => (structure_matrix_explicit(sys, pearson, n)?, structure_matrix_explicit(sys, pearson, n + 1)?),
        Side::Right => {
            (structure_matrix_explicit_right(sys, pearson, n)?, structure_matrix_explicit_right(sys, pearson, n + 1)?)
        }
    };
    let dim = sys.dim();
    let t0 = crate::identities::transfer_matrix(sys, n, side, C64::new(0.0, 0.0))?;
    let t = BlockPoly::new(vec![t0, Block::diag(Mat::identity(dim), Mat::zeros(dim))]);
    let (a, b) = match side {
        Side::Left => (m1.mtilde.mul(&t), t.mul(&m0.mtilde)),
        Side::Right => (t.mul(&m1.mtilde), m0.mtilde.mul(&t)),
    };
    let target = BlockPoly::new(vec![Block::zeros(dim), Block::diag(Mat::identity(dim), Mat::zeros(dim))]);
    let r = a.sub(&b).sub(&target);
    Ok(r.max_coeff_norm() / a.max_coeff_norm().max(b.max_coeff_norm()))
}
