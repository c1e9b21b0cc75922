use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::dense::Dense;
use crate::error::LinalgError;
use crate::scalar::{Scalar, C64};

/// An N×N complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix<T: Scalar = C64> {
    dim: usize,
    data: Vec<T>,
}

pub type Mat = SquareMatrix<C64>;

impl<T: Scalar> SquareMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        SquareMatrix { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn scalar(dim: usize, s: T) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = s;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        SquareMatrix { dim, data }
    }

    /// Builds a matrix from row-major data. Panics if the length is not a square.
    pub fn from_row_major(dim: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), dim * dim);
        assert!(dim >= 1);
        SquareMatrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| {
            assert_eq!(rows[i].len(), dim, "matrix rows must be square");
            rows[i][j]
        })
    }

    pub fn diag(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> SquareMatrix<U> {
        SquareMatrix { dim: self.dim, data: self.data.iter().map(|&x| f(x)).collect() }
    }

    /// Converts between scalar backends through double (lossy towards double).
    pub fn cast<U: Scalar>(&self) -> SquareMatrix<U> {
        self.map(|x| U::from_c64(x.to_c64()))
    }

    pub fn to_c64(&self) -> Mat {
        self.cast()
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.dim {
            t += self[(i, i)];
        }
        t
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }

    /// Induced 1-norm (max column sum).
    pub fn norm1(&self) -> f64 {
        (0..self.dim).map(|j| (0..self.dim).map(|i| self[(i, j)].modulus()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn to_dense(&self) -> Dense<T> {
        Dense::from_fn(self.dim, self.dim, |i, j| self[(i, j)])
    }

    pub fn det(&self) -> T {
        self.to_dense().lu().det()
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let lu = self.to_dense().lu();
        if lu.is_singular() {
            return Err(LinalgError::Singular);
        }
        let inv = lu.inverse();
        Ok(Self::from_fn(self.dim, |i, j| inv[(i, j)]))
    }

    /// Solves `self · X = rhs`.
    pub fn solve_left(&self, rhs: &Self) -> Result<Self, LinalgError> {
        let lu = self.to_dense().lu();
        if lu.is_singular() {
            return Err(LinalgError::Singular);
        }
        let x = lu.solve(&rhs.to_dense());
        Ok(Self::from_fn(self.dim, |i, j| x[(i, j)]))
    }

    /// Solves `X · self = rhs`.
    pub fn solve_right(&self, rhs: &Self) -> Result<Self, LinalgError> {
        Ok(self.transpose().solve_left(&rhs.transpose())?.transpose())
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl Mat {
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn real_diag(values: &[f64]) -> Self {
        Self::diag(&values.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>())
    }
}

impl<T: Scalar> Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.dim + j]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Scalar> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)].to_c64();
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a, T: Scalar> $tr<&'a SquareMatrix<T>> for &'a SquareMatrix<T> {
            type Output = SquareMatrix<T>;
            fn $m(self, rhs: &'a SquareMatrix<T>) -> SquareMatrix<T> {
                assert_eq!(self.dim, rhs.dim, "dimension mismatch");
                SquareMatrix {
                    dim: self.dim,
                    data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a $op b).collect(),
                }
            }
        }
        impl<T: Scalar> $tr<SquareMatrix<T>> for SquareMatrix<T> {
            type Output = SquareMatrix<T>;
            fn $m(self, rhs: SquareMatrix<T>) -> SquareMatrix<T> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, T: Scalar> $tr<&'a SquareMatrix<T>> for SquareMatrix<T> {
            type Output = SquareMatrix<T>;
            fn $m(self, rhs: &'a SquareMatrix<T>) -> SquareMatrix<T> {
                (&self).$m(rhs)
            }
        }
        impl<'a, T: Scalar> $tr<SquareMatrix<T>> for &'a SquareMatrix<T> {
            type Output = SquareMatrix<T>;
            fn $m(self, rhs: SquareMatrix<T>) -> SquareMatrix<T> {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl<'a, T: Scalar> Mul<&'a SquareMatrix<T>> for &'a SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn mul(self, rhs: &'a SquareMatrix<T>) -> SquareMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<T: Scalar> Mul<SquareMatrix<T>> for SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn mul(self, rhs: SquareMatrix<T>) -> SquareMatrix<T> {
        &self * &rhs
    }
}

impl<'a, T: Scalar> Mul<&'a SquareMatrix<T>> for SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn mul(self, rhs: &'a SquareMatrix<T>) -> SquareMatrix<T> {
        &self * rhs
    }
}

impl<T: Scalar> Mul<SquareMatrix<T>> for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn mul(self, rhs: SquareMatrix<T>) -> SquareMatrix<T> {
        self * &rhs
    }
}

impl<T: Scalar> Neg for SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn neg(self) -> SquareMatrix<T> {
        self.map(|x| -x)
    }
}

impl<T: Scalar> Neg for &SquareMatrix<T> {
    type Output = SquareMatrix<T>;
    fn neg(self) -> SquareMatrix<T> {
        self.map(|x| -x)
    }
}

impl<T: Scalar> AddAssign<&SquareMatrix<T>> for SquareMatrix<T> {
    fn add_assign(&mut self, rhs: &SquareMatrix<T>) {
        assert_eq!(self.dim, rhs.dim);
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl<T: Scalar> AddAssign<SquareMatrix<T>> for SquareMatrix<T> {
    fn add_assign(&mut self, rhs: SquareMatrix<T>) {
        *self += &rhs;
    }
}

impl<T: Scalar> SubAssign<&SquareMatrix<T>> for SquareMatrix<T> {
    fn sub_assign(&mut self, rhs: &SquareMatrix<T>) {
        assert_eq!(self.dim, rhs.dim);
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl<T: Scalar> SubAssign<SquareMatrix<T>> for SquareMatrix<T> {
    fn sub_assign(&mut self, rhs: SquareMatrix<T>) {
        *self -= &rhs;
    }
}
