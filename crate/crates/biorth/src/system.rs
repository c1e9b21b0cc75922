use matbiorth_linalg::{Dense, MatrixPolynomial, Scalar, SquareMatrix, C64};
use matbiorth_moments::{block_moment_matrix, MomentError, MomentTable};

use crate::error::BiorthError;

/// Monic biorthogonal families with their normalizations, recursion and
/// second kind coefficients.
///
/// Polynomials are stored for degrees `0..=n_max + 1`; everything else for
/// `0..=n_max`. Subleading coefficients follow `P_n = zⁿ + p¹ z^{n−1} +
/// p² z^{n−2} + ⋯`.
#[derive(Clone, Debug)]
pub struct BiorthSystem<T: Scalar = C64> {
    pub n_max: usize,
    pub pl: Vec<MatrixPolynomial<T>>,
    pub pr: Vec<MatrixPolynomial<T>>,
    pub c: Vec<SquareMatrix<T>>,
    pub c_inv: Vec<SquareMatrix<T>>,
    pub beta_l: Vec<SquareMatrix<T>>,
    pub gamma_l: Vec<SquareMatrix<T>>,
    pub beta_r: Vec<SquareMatrix<T>>,
    pub gamma_r: Vec<SquareMatrix<T>>,
    pub p1_l: Vec<SquareMatrix<T>>,
    pub p2_l: Vec<SquareMatrix<T>>,
    pub p1_r: Vec<SquareMatrix<T>>,
    pub p2_r: Vec<SquareMatrix<T>>,
    pub q1_l: Vec<SquareMatrix<T>>,
    pub q2_l: Vec<SquareMatrix<T>>,
    pub q1_r: Vec<SquareMatrix<T>>,
    pub q2_r: Vec<SquareMatrix<T>>,
    /// Equilibrated condition number of the block Hankel matrix of each
    /// degree `0..=n_max`.
    pub hankel_cond: Vec<f64>,
}

/// Moments needed by [`build_biorth`] for degree `n_max`.
pub fn required_moments(n_max: usize) -> usize {
    2 * n_max + 3
}

fn subleading<T: Scalar>(p: &MatrixPolynomial<T>, k: usize) -> SquareMatrix<T> {
    let n = p.degree();
    if n >= k {
        p.coeff(n - k)
    } else {
        SquareMatrix::zeros(p.dim())
    }
}

/// Solves the left and right orthogonality systems degree by degree.
pub fn build_biorth<T: Scalar>(table: &MomentTable<T>, n_max: usize) -> Result<BiorthSystem<T>, BiorthError> {
    let need = required_moments(n_max);
    if table.len() < need {
        return Err(MomentError::TableTooShort { need, have: table.len() }.into());
    }
    let dim = table.dim();
    let w = |k: usize| &table.moments[k];
    let mut pl = vec![MatrixPolynomial::constant(SquareMatrix::identity(dim))];
    let mut pr = pl.clone();
    let mut hankel_cond = Vec::new();
    for n in 1..=n_max + 1 {
        let bm = block_moment_matrix(table, n - 1)?;
        hankel_cond.push(bm.cond);
        let h = bm.matrix.to_dense();
        let size = n * dim;
        // left: Σ_k a_k W_{k+j} = −W_{n+j}, solved transposed
        let rhs_l = Dense::from_fn(size, dim, |row, r| -w(n + row / dim)[(r, row % dim)]);
        let a = h.transpose().lu().solve(&rhs_l);
        // right: Σ_k W_{j+k} b_k = −W_{j+n}
        let rhs_r = Dense::from_fn(size, dim, |row, c| -w(n + row / dim)[(row % dim, c)]);
        let b = h.lu().solve(&rhs_r);
        let mut cl: Vec<SquareMatrix<T>> =
            (0..n).map(|k| SquareMatrix::from_fn(dim, |r, c| a[(k * dim + c, r)])).collect();
        let mut cr: Vec<SquareMatrix<T>> =
            (0..n).map(|k| SquareMatrix::from_fn(dim, |r, c| b[(k * dim + r, c)])).collect();
        cl.push(SquareMatrix::identity(dim));
        cr.push(SquareMatrix::identity(dim));
        pl.push(MatrixPolynomial::new(cl));
        pr.push(MatrixPolynomial::new(cr));
    }
    hankel_cond.truncate(n_max + 1);
    // contractions L_m = Σ_k a_k W_{k+m} and R_m = Σ_k W_{m+k} b_k
    let left_c = |n: usize, m: usize| {
        let mut s = SquareMatrix::zeros(dim);
        for (k, a) in pl[n].coeffs().iter().enumerate() {
            s += a * w(k + m);
        }
        s
    };
    let right_c = |n: usize, m: usize| {
        let mut s = SquareMatrix::zeros(dim);
        for (k, b) in pr[n].coeffs().iter().enumerate() {
            s += w(m + k) * b;
        }
        s
    };
    let mut sys = BiorthSystem {
        n_max,
        pl: Vec::new(),
        pr: Vec::new(),
        c: Vec::new(),
        c_inv: Vec::new(),
        beta_l: Vec::new(),
        gamma_l: Vec::new(),
        beta_r: Vec::new(),
        gamma_r: Vec::new(),
        p1_l: pl.iter().map(|p| subleading(p, 1)).collect(),
        p2_l: pl.iter().map(|p| subleading(p, 2)).collect(),
        p1_r: pr.iter().map(|p| subleading(p, 1)).collect(),
        p2_r: pr.iter().map(|p| subleading(p, 2)).collect(),
        q1_l: Vec::new(),
        q2_l: Vec::new(),
        q1_r: Vec::new(),
        q2_r: Vec::new(),
        hankel_cond,
    };
    for n in 0..=n_max {
        let c_inv = left_c(n, n);
        let c = c_inv.inverse()?;
        sys.q1_l.push(&c * left_c(n, n + 1));
        sys.q2_l.push(&c * left_c(n, n + 2));
        sys.q1_r.push(right_c(n, n + 1) * &c);
        sys.q2_r.push(right_c(n, n + 2) * &c);
        sys.c.push(c);
        sys.c_inv.push(c_inv);
    }
    for n in 0..=n_max {
        sys.beta_l.push(&sys.p1_l[n] - &sys.p1_l[n + 1]);
        sys.beta_r.push(&sys.p1_r[n] - &sys.p1_r[n + 1]);
        if n == 0 {
            sys.gamma_l.push(SquareMatrix::zeros(dim));
            sys.gamma_r.push(SquareMatrix::zeros(dim));
        } else {
            sys.gamma_l.push(&sys.c_inv[n] * &sys.c[n - 1]);
            sys.gamma_r.push(&sys.c[n - 1] * &sys.c_inv[n]);
        }
    }
    sys.pl = pl;
    sys.pr = pr;
    Ok(sys)
}

impl<T: Scalar> BiorthSystem<T> {
    pub fn dim(&self) -> usize {
        self.c[0].dim()
    }

    pub fn cast<U: Scalar>(&self) -> BiorthSystem<U> {
        let cv = |v: &Vec<SquareMatrix<T>>| v.iter().map(|m| m.cast()).collect();
        BiorthSystem {
            n_max: self.n_max,
            pl: self.pl.iter().map(|p| p.cast()).collect(),
            pr: self.pr.iter().map(|p| p.cast()).collect(),
            c: cv(&self.c),
            c_inv: cv(&self.c_inv),
            beta_l: cv(&self.beta_l),
            gamma_l: cv(&self.gamma_l),
            beta_r: cv(&self.beta_r),
            gamma_r: cv(&self.gamma_r),
            p1_l: cv(&self.p1_l),
            p2_l: cv(&self.p2_l),
            p1_r: cv(&self.p1_r),
            p2_r: cv(&self.p2_r),
            q1_l: cv(&self.q1_l),
            q2_l: cv(&self.q2_l),
            q1_r: cv(&self.q1_r),
            q2_r: cv(&self.q2_r),
            hankel_cond: self.hankel_cond.clone(),
        }
    }

    pub fn to_c64(&self) -> BiorthSystem<C64> {
        self.cast()
    }

    /// `(P_n, P_n', P_n'')` of the left family for `n = 0..=upto`, from the
    /// three-term recurrence `P_{n+1} = (z − β_n) P_n − γ_n P_{n−1}`.
    pub fn left_values(&self, z: T, upto: usize) -> Vec<[SquareMatrix<T>; 3]> {
        let dim = self.dim();
        let zero = SquareMatrix::<T>::zeros(dim);
        let mut out = vec![[SquareMatrix::identity(dim), zero.clone(), zero.clone()]];
        let mut prev = [zero.clone(), zero.clone(), zero];
        for n in 0..upto {
            let cur = &out[n];
            let zb = SquareMatrix::scalar(dim, z) - &self.beta_l[n];
            let g = &self.gamma_l[n];
            let next = [
                &zb * &cur[0] - g * &prev[0],
                &cur[0] + &zb * &cur[1] - g * &prev[1],
                cur[1].scale(T::from_f64(2.0)) + &zb * &cur[2] - g * &prev[2],
            ];
            prev = cur.clone();
            out.push(next);
        }
        out
    }

    /// Right family from `P_{n+1} = P_n (z − β_n) − P_{n−1} γ_n`.
    pub fn right_values(&self, z: T, upto: usize) -> Vec<[SquareMatrix<T>; 3]> {
        let dim = self.dim();
        let zero = SquareMatrix::<T>::zeros(dim);
        let mut out = vec![[SquareMatrix::identity(dim), zero.clone(), zero.clone()]];
        let mut prev = [zero.clone(), zero.clone(), zero];
        for n in 0..upto {
            let cur = &out[n];
            let zb = SquareMatrix::scalar(dim, z) - &self.beta_r[n];
            let g = &self.gamma_r[n];
            let next = [
                &cur[0] * &zb - &prev[0] * g,
                &cur[0] + &cur[1] * &zb - &prev[1] * g,
                cur[1].scale(T::from_f64(2.0)) + &cur[2] * &zb - &prev[2] * g,
            ];
            prev = cur.clone();
            out.push(next);
        }
        out
    }

    /// Largest coefficient of `z P_n − P_{n+1} − β_n P_n − γ_n P_{n−1}`,
    /// relative to the largest coefficient involved.
    pub fn recurrence_residual_left(&self, n: usize) -> f64 {
        let z = MatrixPolynomial::monomial(self.dim(), 1);
        let mut r = z.mul(&self.pl[n]).sub(&self.pl[n + 1]).sub(&self.pl[n].left_mul(&self.beta_l[n]));
        let mut scale = self.pl[n + 1].max_coeff_norm().max(self.pl[n].max_coeff_norm());
        if n > 0 {
            r = r.sub(&self.pl[n - 1].left_mul(&self.gamma_l[n]));
            scale = scale.max(self.pl[n - 1].left_mul(&self.gamma_l[n]).max_coeff_norm());
        }
        r.max_coeff_norm() / scale
    }

    pub fn recurrence_residual_right(&self, n: usize) -> f64 {
        let z = MatrixPolynomial::monomial(self.dim(), 1);
        let mut r = self.pr[n].mul(&z).sub(&self.pr[n + 1]).sub(&self.pr[n].right_mul(&self.beta_r[n]));
        let mut scale = self.pr[n + 1].max_coeff_norm().max(self.pr[n].max_coeff_norm());
        if n > 0 {
            r = r.sub(&self.pr[n - 1].right_mul(&self.gamma_r[n]));
            scale = scale.max(self.pr[n - 1].right_mul(&self.gamma_r[n]).max_coeff_norm());
        }
        r.max_coeff_norm() / scale
    }

    /// `⟨P_n^L, P_m^R⟩ = Σ_{j,k} a_j W_{j+k} b_k` for `n, m ≤ upto`.
    pub fn biorthogonality_matrix(&self, table: &MomentTable<T>, upto: usize) -> Vec<Vec<SquareMatrix<T>>> {
        (0..=upto)
            .map(|n| {
                (0..=upto)
                    .map(|m| {
                        let mut s = SquareMatrix::zeros(self.dim());
                        for (j, a) in self.pl[n].coeffs().iter().enumerate() {
                            for (k, b) in self.pr[m].coeffs().iter().enumerate() {
                                s += a * &table.moments[j + k] * b;
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect()
    }

    /// `⟨zⁿ, P_n^R⟩ = Σ_k W_{n+k} b_k`, which should equal `C_n⁻¹`.
    pub fn right_normalization(&self, table: &MomentTable<T>, n: usize) -> SquareMatrix<T> {
        let mut s = SquareMatrix::zeros(self.dim());
        for (k, b) in self.pr[n].coeffs().iter().enumerate() {
            s += &table.moments[n + k] * b;
        }
        s
    }
}
