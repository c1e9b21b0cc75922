//! Rectangular dense storage and LU with partial pivoting, used for block
//! Hankel solves and Kronecker-vectorized Sylvester systems.

use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Dense<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut d = Self::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = T::one();
        }
        d
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Dense { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Induced 1-norm.
    pub fn norm1(&self) -> f64 {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self[(i, j)].modulus()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn lu(&self) -> Lu<T> {
        assert_eq!(self.rows, self.cols, "LU needs a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1i32;
        let mut singular = false;
        for k in 0..n {
            let mut p = k;
            let mut best = a[(k, k)].modulus();
            for i in k + 1..n {
                let v = a[(i, k)].modulus();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 || !best.is_finite() {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = a[(k, k)];
            for i in k + 1..n {
                let l = a[(i, k)] / pivot;
                a[(i, k)] = l;
                if l.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let u = a[(k, j)];
                    a.data[i * n + j] -= l * u;
                }
            }
        }
        Lu { lu: a, perm, sign, singular }
    }
}

impl<T: Scalar> Index<(usize, usize)> for Dense<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for Dense<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Packed LU factors, `P·A = L·U` with unit lower `L`.
#[derive(Clone, Debug)]
pub struct Lu<T: Scalar> {
    lu: Dense<T>,
    perm: Vec<usize>,
    sign: i32,
    singular: bool,
}

impl<T: Scalar> Lu<T> {
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> T {
        if self.singular {
            return T::zero();
        }
        let mut d = if self.sign > 0 { T::one() } else { -T::one() };
        for i in 0..self.lu.rows {
            d *= self.lu[(i, i)];
        }
        d
    }

    pub fn solve(&self, rhs: &Dense<T>) -> Dense<T> {
        let n = self.lu.rows;
        assert_eq!(rhs.rows, n);
        let m = rhs.cols;
        let mut x = Dense::from_fn(n, m, |i, j| rhs[(self.perm[i], j)]);
        for i in 0..n {
            for k in 0..i {
                let l = self.lu[(i, k)];
                if l.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let v = x[(k, j)];
                    x[(i, j)] -= l * v;
                }
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = self.lu[(i, k)];
                if u.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let v = x[(k, j)];
                    x[(i, j)] -= u * v;
                }
            }
            let d = self.lu[(i, i)];
            for j in 0..m {
                x[(i, j)] = x[(i, j)] / d;
            }
        }
        x
    }

    pub fn inverse(&self) -> Dense<T> {
        self.solve(&Dense::identity(self.lu.rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Cdd, C64};

    #[test]
    fn lu_solves_permuted_system() {
        let a = Dense::from_fn(3, 3, |i, j| C64::new([[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]][i][j], 0.0));
        let b = Dense::from_fn(3, 1, |i, _| C64::new([3.0, 2.0, 4.0][i], 0.0));
        let x = a.lu().solve(&b);
        for i in 0..3 {
            assert!((x[(i, 0)] - C64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!((a.lu().det() - C64::new(-5.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn double_double_hilbert_solve() {
        let n = 8;
        let h = Dense::from_fn(n, n, |i, j| Cdd::one() / Cdd::from_usize(i + j + 1));
        let ones = Dense::from_fn(n, 1, |_, _| Cdd::one());
        let b = h.matmul(&ones);
        let x = h.lu().solve(&b);
        for i in 0..n {
            assert!((x[(i, 0)] - Cdd::one()).modulus() < 1e-20);
        }
    }
}
