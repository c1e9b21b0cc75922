use std::ops::{Add, Mul, Sub};

use crate::matrix::SquareMatrix;
use crate::scalar::{Scalar, C64};

/// A 2N×2N matrix viewed as a 2×2 grid of N×N blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix2x2<T: Scalar = C64> {
    pub blocks: [[SquareMatrix<T>; 2]; 2],
}

pub type Block = BlockMatrix2x2<C64>;

impl<T: Scalar> BlockMatrix2x2<T> {
    pub fn new(b11: SquareMatrix<T>, b12: SquareMatrix<T>, b21: SquareMatrix<T>, b22: SquareMatrix<T>) -> Self {
        let n = b11.dim();
        assert!(b12.dim() == n && b21.dim() == n && b22.dim() == n, "blocks must share a dimension");
        BlockMatrix2x2 { blocks: [[b11, b12], [b21, b22]] }
    }

    pub fn zeros(n: usize) -> Self {
        let z = SquareMatrix::zeros(n);
        Self::new(z.clone(), z.clone(), z.clone(), z)
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(SquareMatrix::identity(n), SquareMatrix::identity(n))
    }

    pub fn diag(a: SquareMatrix<T>, d: SquareMatrix<T>) -> Self {
        let z = SquareMatrix::zeros(a.dim());
        Self::new(a, z.clone(), z, d)
    }

    /// `[[0, -I], [I, 0]]`
    pub fn j(n: usize) -> Self {
        let z = SquareMatrix::zeros(n);
        let i = SquareMatrix::identity(n);
        Self::new(z.clone(), -&i, i, z)
    }

    /// `[[0, I], [-I, 0]]`, the inverse of [`Self::j`].
    pub fn j_inv(n: usize) -> Self {
        let z = SquareMatrix::zeros(n);
        let i = SquareMatrix::identity(n);
        Self::new(z.clone(), i.clone(), -&i, z)
    }

    pub fn block_dim(&self) -> usize {
        self.blocks[0][0].dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &SquareMatrix<T> {
        &self.blocks[i][j]
    }

    pub fn to_matrix(&self) -> SquareMatrix<T> {
        let n = self.block_dim();
        SquareMatrix::from_fn(2 * n, |i, j| self.blocks[i / n][j / n][(i % n, j % n)])
    }

    pub fn from_matrix(m: &SquareMatrix<T>) -> Self {
        assert!(m.dim().is_multiple_of(2), "block split needs an even dimension");
        let n = m.dim() / 2;
        let sub = |bi: usize, bj: usize| SquareMatrix::from_fn(n, |i, j| m[(bi * n + i, bj * n + j)]);
        Self::new(sub(0, 0), sub(0, 1), sub(1, 0), sub(1, 1))
    }

    pub fn det(&self) -> T {
        self.to_matrix().det()
    }

    pub fn inverse(&self) -> Result<Self, crate::LinalgError> {
        Ok(Self::from_matrix(&self.to_matrix().inverse()?))
    }

    pub fn scale(&self, s: T) -> Self {
        let b = &self.blocks;
        Self::new(b[0][0].scale(s), b[0][1].scale(s), b[1][0].scale(s), b[1][1].scale(s))
    }

    pub fn norm(&self) -> f64 {
        self.blocks.iter().flatten().map(|b| b.norm().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().flatten().map(|b| b.max_abs()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl<'a, T: Scalar> Mul<&'a BlockMatrix2x2<T>> for &'a BlockMatrix2x2<T> {
    type Output = BlockMatrix2x2<T>;
    fn mul(self, rhs: &'a BlockMatrix2x2<T>) -> BlockMatrix2x2<T> {
        let a = &self.blocks;
        let b = &rhs.blocks;
        BlockMatrix2x2::new(
            &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
            &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
            &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
        )
    }
}

impl<T: Scalar> Mul for BlockMatrix2x2<T> {
    type Output = BlockMatrix2x2<T>;
    fn mul(self, rhs: BlockMatrix2x2<T>) -> BlockMatrix2x2<T> {
        &self * &rhs
    }
}

impl<'a, T: Scalar> Add<&'a BlockMatrix2x2<T>> for &'a BlockMatrix2x2<T> {
    type Output = BlockMatrix2x2<T>;
    fn add(self, rhs: &'a BlockMatrix2x2<T>) -> BlockMatrix2x2<T> {
        let a = &self.blocks;
        let b = &rhs.blocks;
        BlockMatrix2x2::new(&a[0][0] + &b[0][0], &a[0][1] + &b[0][1], &a[1][0] + &b[1][0], &a[1][1] + &b[1][1])
    }
}

impl<T: Scalar> Add for BlockMatrix2x2<T> {
    type Output = BlockMatrix2x2<T>;
    fn add(self, rhs: BlockMatrix2x2<T>) -> BlockMatrix2x2<T> {
        &self + &rhs
    }
}

impl<'a, T: Scalar> Sub<&'a BlockMatrix2x2<T>> for &'a BlockMatrix2x2<T> {
    type Output = BlockMatrix2x2<T>;
    fn sub(self, rhs: &'a BlockMatrix2x2<T>) -> BlockMatrix2x2<T> {
        let a = &self.blocks;
        let b = &rhs.blocks;
        BlockMatrix2x2::new(&a[0][0] - &b[0][0], &a[0][1] - &b[0][1], &a[1][0] - &b[1][0], &a[1][1] - &b[1][1])
    }
}

impl<T: Scalar> Sub for BlockMatrix2x2<T> {
    type Output = BlockMatrix2x2<T>;
    fn sub(self, rhs: BlockMatrix2x2<T>) -> BlockMatrix2x2<T> {
        &self - &rhs
    }
}
