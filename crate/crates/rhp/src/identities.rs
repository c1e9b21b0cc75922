use matbiorth_biorth::BiorthSystem;
use matbiorth_linalg::{Block, Mat, C64};
use matbiorth_weights::Side;

use crate::error::RhpError;
use crate::frame::Frame;

/// `|det Y − 1|`.
pub fn det_residual(frame: &Frame) -> f64 {
    (frame.y.det() - C64::new(1.0, 0.0)).norm()
}

/// Residuals of
/// `Q_nᴸ P_{n−1}ᴿ − P_nᴸ Q_{n−1}ᴿ = C_{n−1}⁻¹`,
/// `P_{n−1}ᴸ Q_nᴿ − Q_{n−1}ᴸ P_nᴿ = C_{n−1}⁻¹` and
/// `Q_nᴸ P_nᴿ − P_nᴸ Q_nᴿ = 0`, each relative to its largest term.
pub fn corollary_identities(sys: &BiorthSystem, left: &Frame, right: &Frame) -> [f64; 3] {
    let n = left.n;
    assert!(right.n == n && left.side == Side::Left && right.side == Side::Right);
    let ci = &sys.c_inv[n - 1];
    let (pl, ql) = (left.y.get(0, 0), left.y.get(0, 1));
    // undo the −C_{n−1} factors of the second rows and columns
    let plm = -(ci * left.y.get(1, 0));
    let qlm = -(ci * left.y.get(1, 1));
    let (pr, qr) = (right.y.get(0, 0), right.y.get(1, 0));
    let prm = -(right.y.get(0, 1) * ci);
    let qrm = -(right.y.get(1, 1) * ci);
    let rel = |a: Mat, b: Mat, rhs: &Mat| {
        let scale = a.norm().max(b.norm()).max(rhs.norm());
        (a - b - rhs).norm() / scale.max(f64::MIN_POSITIVE)
    };
    let zero = Mat::zeros(ci.dim());
    [rel(ql * &prm, pl * &qrm, ci), rel(&plm * qr, &qlm * pr, ci), rel(ql * pr, pl * qr, &zero)]
}

/// `Tₙᴸ = [[z − βₙᴸ, Cₙ⁻¹], [−Cₙ, 0]]`, `Tₙᴿ = [[z − βₙᴿ, −Cₙ], [Cₙ⁻¹, 0]]`.
pub fn transfer_matrix(sys: &BiorthSystem, n: usize, side: Side, z: C64) -> Result<Block, RhpError> {
    if n > sys.n_max {
        return Err(RhpError::DegreeOutOfRange { n, lo: 0, hi: sys.n_max });
    }
    let dim = sys.dim();
    let zero = Mat::zeros(dim);
    Ok(match side {
        Side::Left => Block::new(Mat::scalar(dim, z) - &sys.beta_l[n], sys.c_inv[n].clone(), -&sys.c[n], zero),
        Side::Right => Block::new(Mat::scalar(dim, z) - &sys.beta_r[n], -&sys.c[n], sys.c_inv[n].clone(), zero),
    })
}

/// `‖Y_{n+1} − Tₙ Yₙ‖` on the left, `‖Y_{n+1} − Yₙ Tₙ‖` on the right, relative.
pub fn transfer_residual(sys: &BiorthSystem, cur: &Frame, next: &Frame) -> Result<f64, RhpError> {
    assert!(next.n == cur.n + 1 && cur.side == next.side);
    let t = transfer_matrix(sys, cur.n, cur.side, cur.z)?;
    let prod = match cur.side {
        Side::Left => &t * &cur.y,
        Side::Right => &cur.y * &t,
    };
    let scale = next.y.norm().max(t.norm() * cur.y.norm());
    Ok(next.y.dist(&prod) / scale)
}

/// `‖Yᴿ − J (Yᴸ)⁻¹ J⁻¹‖ / ‖Yᴿ‖`; the dressing by the weight factors cancels
/// in the same relation between `Zᴿ` and `Zᴸ`.
pub fn left_right_residual(left: &Frame, right: &Frame) -> Result<f64, RhpError> {
    let dim = left.y.block_dim();
    let inv = left.y.inverse()?;
    let swapped = &(&Block::j(dim) * &inv) * &Block::j_inv(dim);
    Ok(right.y.dist(&swapped) / right.y.norm())
}
