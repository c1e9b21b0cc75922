use matbiorth_linalg::{eigenvalues, LaurentPolynomial, Mat, MatPoly};

use crate::error::WeightError;

/// Imaginary parts below this count as a real spectrum.
const REAL_TOL: f64 = 1e-9;

/// Pearson data `z W' = hL W + W hR` with the seeds of the local solutions
/// `WL = H(z) z^AL W0L` and `WR = W0R z^AR H(z)`.
#[derive(Clone, Debug)]
pub struct PearsonData {
    pub h_l: MatPoly,
    pub h_r: MatPoly,
    pub w0_l: Mat,
    pub w0_r: Mat,
}

impl PearsonData {
    pub fn new(h_l: MatPoly, h_r: MatPoly, w0_l: Mat, w0_r: Mat) -> Result<Self, WeightError> {
        let p = PearsonData { h_l, h_r, w0_l, w0_r };
        p.validate()?;
        Ok(p)
    }

    /// One-sided data `hR = 0`, `W0L = W0R = I`.
    pub fn left(h_l: MatPoly) -> Result<Self, WeightError> {
        let n = h_l.dim();
        Self::new(h_l, MatPoly::zero(n), Mat::identity(n), Mat::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.h_l.dim()
    }

    pub fn degree(&self) -> usize {
        self.h_l.degree().max(self.h_r.degree())
    }

    pub fn a_l(&self) -> Mat {
        self.h_l.coeff(0)
    }

    pub fn a_r(&self) -> Mat {
        self.h_r.coeff(0)
    }

    /// `hL + hR`, the polynomial driving the moment recurrence and the decay.
    pub fn h_sum(&self) -> MatPoly {
        self.h_l.add(&self.h_r)
    }

    pub fn is_one_sided(&self) -> bool {
        self.h_r.max_coeff_norm() == 0.0
    }

    pub fn a_left(&self) -> MatPoly {
        two_h_plus_one(&self.h_l)
    }

    pub fn a_right(&self) -> MatPoly {
        two_h_plus_one(&self.h_r)
    }

    pub fn b_left(&self) -> LaurentPolynomial {
        self.h_l.n_transform()
    }

    pub fn b_right(&self) -> LaurentPolynomial {
        self.h_r.n_transform()
    }

    fn validate(&self) -> Result<(), WeightError> {
        let n = self.h_l.dim();
        if self.h_r.dim() != n || self.w0_l.dim() != n || self.w0_r.dim() != n {
            return Err(WeightError::InvalidPearson("dimensions differ".into()));
        }
        if self.degree() > 2 {
            return Err(WeightError::InvalidPearson(format!("degree {} exceeds 2", self.degree())));
        }
        if self.degree() == 0 {
            return Err(WeightError::NoDecay { re: 0.0 });
        }
        for seed in [&self.w0_l, &self.w0_r] {
            if seed.det().norm() < 1e-14 * seed.norm().powi(n as i32).max(1e-300) {
                return Err(WeightError::InvalidPearson("seed matrix is singular".into()));
            }
        }
        for a in [self.a_l(), self.a_r(), self.a_l() + self.a_r()] {
            for ev in eigenvalues(&a)? {
                if ev.im.abs() > REAL_TOL || ev.re <= -1.0 {
                    return Err(WeightError::NotIntegrableAtOrigin(format!("{ev}")));
                }
            }
        }
        let lead = self.h_sum().coeff(self.degree());
        let worst = eigenvalues(&lead)?.into_iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
        if worst >= 0.0 {
            return Err(WeightError::NoDecay { re: worst });
        }
        Ok(())
    }
}

fn two_h_plus_one(h: &MatPoly) -> MatPoly {
    h.scale(matbiorth_linalg::re(2.0)).add(&MatPoly::constant(Mat::identity(h.dim())))
}
