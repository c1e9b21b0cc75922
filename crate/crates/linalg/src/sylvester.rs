use crate::dense::Dense;
use crate::error::LinalgError;
use crate::funcs::spectral_gap;
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// Absolute eigenvalue gap below which `X·P − Q·X = R` is treated as resonant.
pub const GAP_TOL: f64 = 1e-8;

/// Solves `X·P − Q·X = R` through the Kronecker system
/// `(Pᵀ ⊗ I − I ⊗ Q) vec X = vec R` (column-major `vec`).
///
/// The spectral check runs in double; the solve runs in `T`.
pub fn solve_sylvester<T: Scalar>(
    p: &SquareMatrix<T>,
    q: &SquareMatrix<T>,
    r: &SquareMatrix<T>,
) -> Result<SquareMatrix<T>, LinalgError> {
    let n = p.dim();
    assert!(q.dim() == n && r.dim() == n, "Sylvester operands must share a dimension");
    let gap = spectral_gap(&p.to_c64(), &q.to_c64())?;
    if gap < GAP_TOL {
        return Err(LinalgError::SpectraOverlap { gap, tol: GAP_TOL });
    }
    let nn = n * n;
    // unknown index for X[i][j] is j*n + i
    let mut k = Dense::zeros(nn, nn);
    for j in 0..n {
        for i in 0..n {
            let row = j * n + i;
            // (X P)[i][j] = Σ_l X[i][l] P[l][j]
            for l in 0..n {
                k[(row, l * n + i)] += p[(l, j)];
            }
            // (Q X)[i][j] = Σ_l Q[i][l] X[l][j]
            for l in 0..n {
                k[(row, j * n + l)] -= q[(i, l)];
            }
        }
    }
    let rhs = Dense::from_fn(nn, 1, |row, _| r[(row % n, row / n)]);
    let lu = k.lu();
    if lu.is_singular() {
        return Err(LinalgError::SpectraOverlap { gap, tol: GAP_TOL });
    }
    let x = lu.solve(&rhs);
    Ok(SquareMatrix::from_fn(n, |i, j| x[(j * n + i, 0)]))
}

/// `‖X·P − Q·X − R‖` in Frobenius norm.
pub fn sylvester_residual<T: Scalar>(
    x: &SquareMatrix<T>,
    p: &SquareMatrix<T>,
    q: &SquareMatrix<T>,
    r: &SquareMatrix<T>,
) -> f64 {
    (x * p - q * x - r).norm()
}
