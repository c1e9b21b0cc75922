use matbiorth_linalg::{Block, MatPoly, C64};

/// Polynomial with 2N×2N block coefficients, ascending powers of `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockPoly {
    pub coeffs: Vec<Block>,
}

impl BlockPoly {
    pub fn new(coeffs: Vec<Block>) -> Self {
        assert!(!coeffs.is_empty(), "a block polynomial needs a coefficient");
        BlockPoly { coeffs }
    }

    /// `diag(a(z), d(z))`.
    pub fn diag(a: &MatPoly, d: &MatPoly) -> Self {
        let len = a.degree().max(d.degree()) + 1;
        Self::new((0..len).map(|k| Block::diag(a.coeff(k), d.coeff(k))).collect())
    }

    pub fn block_dim(&self) -> usize {
        self.coeffs[0].block_dim()
    }

    pub fn coeff(&self, k: usize) -> Block {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Block::zeros(self.block_dim()))
    }

    pub fn eval(&self, z: C64) -> Block {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc.scale(z) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(vec![Block::zeros(self.block_dim())]);
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(C64::new(k as f64, 0.0))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Block::zeros(self.block_dim()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn conjugate(&self, left: &Block, right: &Block) -> Self {
        Self::new(self.coeffs.iter().map(|c| &(left * c) * right).collect())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `N(F)(z) = F'(z) + F(z)²/z`, pointwise.
    pub fn n_transform_at(&self, z: C64) -> Block {
        let f = self.eval(z);
        &self.derivative().eval(z) + &(&f * &f).scale(C64::new(1.0, 0.0) / z)
    }
}
