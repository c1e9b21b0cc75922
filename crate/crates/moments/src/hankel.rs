use matbiorth_linalg::{Dense, Scalar, SquareMatrix};

use crate::error::MomentError;
use crate::table::MomentTable;

/// `cond · eps` above this is a regularity failure.
pub const REGULARITY_BUDGET: f64 = 1e-2;

#[derive(Clone, Debug)]
pub struct BlockMoments<T: Scalar> {
    /// `[W_{j+k}]_{j,k=0..n}`.
    pub matrix: SquareMatrix<T>,
    /// 1-norm condition number after symmetric diagonal equilibration.
    pub cond: f64,
}

/// Condition number of `D H D` with `D = diag(|H_ii|^{-1/2})`.
pub fn equilibrated_cond<T: Scalar>(h: &SquareMatrix<T>) -> f64 {
    let n = h.dim();
    let d: Vec<T> = (0..n)
        .map(|i| {
            let v = h[(i, i)].modulus();
            T::from_f64(if v > 0.0 { 1.0 / v.sqrt() } else { 1.0 })
        })
        .collect();
    let m = Dense::from_fn(n, n, |i, j| d[i] * h[(i, j)] * d[j]);
    let lu = m.lu();
    if lu.is_singular() {
        return f64::INFINITY;
    }
    let c = m.norm1() * lu.inverse().norm1();
    if c.is_finite() {
        c
    } else {
        f64::INFINITY
    }
}

pub fn block_moment_matrix<T: Scalar>(table: &MomentTable<T>, n: usize) -> Result<BlockMoments<T>, MomentError> {
    if table.len() < 2 * n + 1 {
        return Err(MomentError::TableTooShort { need: 2 * n + 1, have: table.len() });
    }
    let dim = table.dim();
    let matrix = SquareMatrix::from_fn((n + 1) * dim, |r, c| {
        let (j, a) = (r / dim, r % dim);
        let (k, b) = (c / dim, c % dim);
        table.moments[j + k][(a, b)]
    });
    let cond = equilibrated_cond(&matrix);
    let limit = REGULARITY_BUDGET / T::EPSILON;
    if !(cond <= limit) {
        return Err(MomentError::RegularityFailure { n, cond, limit });
    }
    Ok(BlockMoments { matrix, cond })
}
