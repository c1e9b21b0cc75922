use matbiorth_biorth::BiorthSystem;
use matbiorth_linalg::{Mat, MatPoly};

use crate::error::PainleveError;

/// Pearson coefficients and left recursion coefficients, with the partial
/// sums of the nonlocal terms cached.
///
/// `s1[n] = Σ_{k<n} βₖ`, `s2[n] = Σ_{j<k<n} βₖβⱼ` and `sg[n] = Σ_{k<n} γₖ`, so
/// the subleading coefficients are `p¹ₙ = −s1[n]` and `p²ₙ = s2[n] − sg[n]`.
#[derive(Clone, Debug)]
pub struct DPIVData {
    pub a: Mat,
    pub b: Mat,
    pub c: Mat,
    pub beta: Vec<Mat>,
    pub gamma: Vec<Mat>,
    s1: Vec<Mat>,
    s2: Vec<Mat>,
    sg: Vec<Mat>,
}

impl DPIVData {
    pub fn new(a: Mat, b: Mat, c: Mat, beta: Vec<Mat>, gamma: Vec<Mat>) -> Result<Self, PainleveError> {
        let dim = a.dim();
        if [&b, &c].iter().any(|m| m.dim() != dim) || beta.iter().chain(&gamma).any(|m| m.dim() != dim) {
            return Err(PainleveError::Precondition("coefficient dimensions differ".into()));
        }
        if beta.len() != gamma.len() {
            return Err(PainleveError::Precondition("β and γ lengths differ".into()));
        }
        let (s1, s2, sg) = partial_sums(&beta, &gamma);
        Ok(DPIVData { a, b, c, beta, gamma, s1, s2, sg })
    }

    /// Reads `A, B, C` from `h_l`, which must have degree at most two.
    pub fn from_system(h_l: &MatPoly, sys: &BiorthSystem) -> Result<Self, PainleveError> {
        if h_l.degree() > 2 {
            return Err(PainleveError::Precondition(format!("Pearson data of degree {}", h_l.degree())));
        }
        Self::new(h_l.coeff(0), h_l.coeff(1), h_l.coeff(2), sys.beta_l.clone(), sys.gamma_l.clone())
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Largest `n` with coefficients available.
    pub fn top(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn p1(&self, n: usize) -> Mat {
        -&self.s1[n]
    }

    pub fn p2(&self, n: usize) -> Mat {
        &self.s2[n] - &self.sg[n]
    }

    pub fn sum_beta(&self, n: usize) -> &Mat {
        &self.s1[n]
    }

    pub fn sum_beta_pairs(&self, n: usize) -> &Mat {
        &self.s2[n]
    }

    pub fn sum_gamma(&self, n: usize) -> &Mat {
        &self.sg[n]
    }

    /// Copy with `γₙ` replaced; the sums are rebuilt.
    pub fn with_gamma(&self, n: usize, g: Mat) -> Self {
        let mut gamma = self.gamma.clone();
        gamma[n] = g;
        Self::new(self.a.clone(), self.b.clone(), self.c.clone(), self.beta.clone(), gamma).expect("same shapes")
    }

    pub(crate) fn need(&self, n: usize, upto: usize) -> Result<(), PainleveError> {
        if upto > self.top() {
            return Err(PainleveError::DegreeOutOfRange { n, need: upto, have: self.top() });
        }
        Ok(())
    }
}

pub(crate) fn partial_sums(beta: &[Mat], gamma: &[Mat]) -> (Vec<Mat>, Vec<Mat>, Vec<Mat>) {
    let dim = beta.first().map_or(1, |b| b.dim());
    let mut s1 = vec![Mat::zeros(dim)];
    let mut s2 = vec![Mat::zeros(dim)];
    let mut sg = vec![Mat::zeros(dim)];
    for (k, (b, g)) in beta.iter().zip(gamma).enumerate() {
        s2.push(&s2[k] + b * &s1[k]);
        s1.push(&s1[k] + b);
        sg.push(&sg[k] + g);
    }
    (s1, s2, sg)
}
