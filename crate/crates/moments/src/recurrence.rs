use matbiorth_linalg::{solve_sylvester, sylvester_residual, Scalar, SquareMatrix};
use matbiorth_weights::PearsonData;

use crate::error::MomentError;
use crate::table::{MomentSource, MomentTable};

/// Relative residual allowed for one Sylvester step.
pub const STEP_RESIDUAL: f64 = 1e-10;

/// Extends `seed` (at least `deg h` moments) to `m + 1` moments with
/// `−(n+1) W_n = Σ_j (A_jᴸ W_{n+j} + W_{n+j} A_jᴿ)`, solving at each step
/// `A_dᴸ X + X A_dᴿ = R` for `X = W_{n+d}`.
pub fn moments_by_recurrence<T: Scalar>(
    pearson: &PearsonData,
    seed: &MomentTable<T>,
    m: usize,
) -> Result<MomentTable<T>, MomentError> {
    let d = pearson.degree();
    if seed.len() < d {
        return Err(MomentError::TableTooShort { need: d, have: seed.len() });
    }
    let hl: Vec<SquareMatrix<T>> = (0..=d).map(|j| pearson.h_l.coeff(j).cast()).collect();
    let hr: Vec<SquareMatrix<T>> = (0..=d).map(|j| pearson.h_r.coeff(j).cast()).collect();
    // X·P − Q·X = R with P = A_dᴿ, Q = −A_dᴸ
    let p = hr[d].clone();
    let q = -&hl[d];
    let mut table = seed.truncated(d);
    // relative error inherited from the seeds
    let seed_rel =
        (0..d).map(|k| seed.err_est[k] / seed.moments[k].to_c64().max_abs().max(f64::MIN_POSITIVE)).fold(0.0, f64::max);
    while table.len() <= m {
        let n = table.len() - d;
        let mut r = table.moments[n].scale(T::from_f64(-((n + 1) as f64)));
        for j in 0..d {
            let w = &table.moments[n + j];
            r -= &hl[j] * w + w * &hr[j];
        }
        let x = solve_sylvester(&p, &q, &r)?;
        let res = sylvester_residual(&x, &p, &q, &r);
        let scale = (&p * &x).norm() + (&q * &x).norm() + r.norm();
        if res > STEP_RESIDUAL * scale.max(f64::MIN_POSITIVE) {
            return Err(MomentError::RecurrenceResidual { n: n + d, residual: res / scale });
        }
        let size = x.to_c64().max_abs();
        table.err_est.push((seed_rel + 4.0 * (n + d) as f64 * T::EPSILON) * size);
        table.moments.push(x);
        table.source.push(MomentSource::Recurrence);
    }
    Ok(table)
}
