use crate::matrix::SquareMatrix;
use crate::scalar::{Scalar, C64};

/// Matrix polynomial `Σ coeffs[k] z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPolynomial<T: Scalar = C64> {
    coeffs: Vec<SquareMatrix<T>>,
}

pub type MatPoly = MatrixPolynomial<C64>;

impl<T: Scalar> MatrixPolynomial<T> {
    pub fn new(coeffs: Vec<SquareMatrix<T>>) -> Self {
        assert!(!coeffs.is_empty(), "a matrix polynomial needs at least one coefficient");
        let dim = coeffs[0].dim();
        assert!(coeffs.iter().all(|c| c.dim() == dim), "coefficient dimensions differ");
        let mut p = MatrixPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero(dim: usize) -> Self {
        MatrixPolynomial { coeffs: vec![SquareMatrix::zeros(dim)] }
    }

    pub fn constant(c: SquareMatrix<T>) -> Self {
        Self::new(vec![c])
    }

    /// `z^n · I`.
    pub fn monomial(dim: usize, n: usize) -> Self {
        let mut coeffs = vec![SquareMatrix::zeros(dim); n + 1];
        coeffs[n] = SquareMatrix::identity(dim);
        MatrixPolynomial { coeffs }
    }

    /// `z^n · c`.
    pub fn monomial_with(c: SquareMatrix<T>, n: usize) -> Self {
        let dim = c.dim();
        let mut coeffs = vec![SquareMatrix::zeros(dim); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    /// Degree after trimming; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[SquareMatrix<T>] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> SquareMatrix<T> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| SquareMatrix::zeros(self.dim()))
    }

    pub fn leading(&self) -> &SquareMatrix<T> {
        self.coeffs.last().expect("nonempty")
    }

    pub fn is_monic(&self, tol: f64) -> bool {
        self.leading().dist(&SquareMatrix::identity(self.dim())) <= tol
    }

    pub fn eval(&self, z: T) -> SquareMatrix<T> {
        let mut acc = self.leading().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.scale(z) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(self.dim());
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(T::from_usize(k))).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let dim = self.dim();
        let mut out = vec![SquareMatrix::zeros(dim); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `c · P(z)`.
    pub fn left_mul(&self, c: &SquareMatrix<T>) -> Self {
        Self::new(self.coeffs.iter().map(|a| c * a).collect())
    }

    /// `P(z) · c`.
    pub fn right_mul(&self, c: &SquareMatrix<T>) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(s)).collect())
    }

    /// `z · P(z)`.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(SquareMatrix::zeros(self.dim()));
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Coefficients of `P(c + t)` in powers of `t`.
    pub fn taylor_shift(&self, c: T) -> Self {
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let next = coeffs[k + 1].scale(c);
                coeffs[k] += &next;
            }
        }
        Self::new(coeffs)
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.transpose()).collect())
    }

    /// Largest coefficient Frobenius norm.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn cast<U: Scalar>(&self) -> MatrixPolynomial<U> {
        MatrixPolynomial::new(self.coeffs.iter().map(|c| c.cast()).collect())
    }
}

/// `residue / z + regular(z)`: the shape produced by the N-transform of a
/// polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial<T: Scalar = C64> {
    pub residue: SquareMatrix<T>,
    pub regular: MatrixPolynomial<T>,
}

impl<T: Scalar> LaurentPolynomial<T> {
    pub fn has_pole(&self) -> bool {
        !self.residue.is_zero()
    }

    /// `None` at `z = 0` when a pole is present.
    pub fn eval(&self, z: T) -> Option<SquareMatrix<T>> {
        if z.is_zero() {
            return if self.has_pole() { None } else { Some(self.regular.eval(z)) };
        }
        Some(self.regular.eval(z) + self.residue.scale(T::one() / z))
    }
}

impl<T: Scalar> MatrixPolynomial<T> {
    /// `N(F) = F' + F²/z`.
    pub fn n_transform(&self) -> LaurentPolynomial<T> {
        let sq = self.mul(self);
        let residue = sq.coeff(0);
        let shifted = if sq.coeffs.len() > 1 {
            MatrixPolynomial::new(sq.coeffs[1..].to_vec())
        } else {
            MatrixPolynomial::zero(self.dim())
        };
        LaurentPolynomial { residue, regular: self.derivative().add(&shifted) }
    }
}
