use matbiorth_linalg::{Block, Mat, C64};
use matbiorth_weights::{PearsonData, Side};

use crate::error::RhpError;
use crate::frame::{bdiag, Frame};
use crate::ntransform::n_transform_value;
use crate::structure::StructureMatrix;

fn relative(res: &Block, terms: &[f64]) -> f64 {
    res.norm() / terms.iter().cloned().fold(f64::MIN_POSITIVE, f64::max)
}

fn h_at(pearson: &PearsonData, z: C64, flip_right: bool) -> (Mat, Mat) {
    let hr = pearson.h_r.eval(z);
    (pearson.h_l.eval(z), if flip_right { -hr } else { hr })
}

/// Relative residual of `z Y' + Y diag(hᴸ, −hᴿ) − M̃ Y` (left) or
/// `z Y' + diag(hᴿ, −hᴸ) Y − Y M̃` (right).
pub fn first_order_ode_residual(frame: &Frame, pearson: &PearsonData, m: &StructureMatrix) -> f64 {
    first_order_with(frame, pearson, m, false)
}

/// The same residual with the sign of `hᴿ` flipped, a negative control.
pub fn first_order_ode_residual_wrong_sign(frame: &Frame, pearson: &PearsonData, m: &StructureMatrix) -> f64 {
    first_order_with(frame, pearson, m, true)
}

fn first_order_with(frame: &Frame, pearson: &PearsonData, m: &StructureMatrix, flip: bool) -> f64 {
    assert_eq!(frame.side, m.side);
    let z = frame.z;
    let (hl, hr) = h_at(pearson, z, flip);
    let mt = m.eval(z);
    let zdy = frame.dy.scale(z);
    let (b, c) = match frame.side {
        Side::Left => (&frame.y * &bdiag(hl, -hr), &mt * &frame.y),
        Side::Right => (&bdiag(hr, -hl) * &frame.y, &frame.y * &mt),
    };
    let res = &(&zdy + &b) - &c;
    relative(&res, &[zdy.norm(), b.norm(), c.norm()])
}

/// Relative residual of
/// `z Y'' + Y' diag(2hᴸ + I, −2hᴿ + I) + Y diag(N(hᴸ), N(−hᴿ)) − N(M̃) Y`
/// on the left, and of the mirrored equation on the right.
pub fn second_order_ode_residual(frame: &Frame, pearson: &PearsonData, m: &StructureMatrix) -> Result<f64, RhpError> {
    assert_eq!(frame.side, m.side);
    let z = frame.z;
    let dim = pearson.dim();
    let id = Mat::identity(dim);
    let two = C64::new(2.0, 0.0);
    let (hl, hr) = (pearson.h_l.eval(z), pearson.h_r.eval(z));
    let (dhl, dhr) = (pearson.h_l.derivative().eval(z), pearson.h_r.derivative().eval(z));
    let nl = n_transform_value(&hl, &dhl, z)?;
    let nr = n_transform_value(&hr, &dhr, z)?;
    let nmr = n_transform_value(&(-&hr), &(-&dhr), z)?;
    let nml = n_transform_value(&(-&hl), &(-&dhl), z)?;
    let nm = m.n_transform_at(z);
    let zd2 = frame.d2y.scale(z);
    let (b, c, d) = match frame.side {
        Side::Left => {
            (&frame.dy * &bdiag(hl.scale(two) + &id, -hr.scale(two) + &id), &frame.y * &bdiag(nl, nmr), &nm * &frame.y)
        }
        Side::Right => {
            (&bdiag(hr.scale(two) + &id, -hl.scale(two) + &id) * &frame.dy, &bdiag(nr, nml) * &frame.y, &frame.y * &nm)
        }
    };
    let res = &(&(&zd2 + &b) + &c) - &d;
    Ok(relative(&res, &[zd2.norm(), b.norm(), c.norm(), d.norm()]))
}
