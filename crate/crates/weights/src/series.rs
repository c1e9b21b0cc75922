//! Local solutions of `z W' = h(z) W`: the Frobenius series at the regular
//! singular point and Taylor expansions about regular points.

use matbiorth_linalg::{matrix_power, re, solve_sylvester, Mat, MatPoly, C64};

use crate::error::WeightError;

/// Coefficients `H_1..H_K` of `H(z) = I + Σ H_k z^k` with `W = H(z) z^A`,
/// `A = h(0)`, from `H_k (A + kI) − A H_k = Σ_{j=1..k} h_j H_{k−j}`.
pub fn frobenius_series(h: &MatPoly, k_terms: usize) -> Result<Vec<Mat>, WeightError> {
    let n = h.dim();
    let a = h.coeff(0);
    let mut hs = vec![Mat::identity(n)];
    for k in 1..=k_terms {
        let mut rhs = Mat::zeros(n);
        for j in 1..=k.min(h.degree()) {
            rhs += h.coeff(j) * &hs[k - j];
        }
        let p = &a + &Mat::scalar(n, re(k as f64));
        hs.push(solve_sylvester(&p, &a, &rhs)?);
    }
    hs.remove(0);
    Ok(hs)
}

/// `H(z) = I + Σ H_k z^k` by Horner.
pub fn frobenius_h(hs: &[Mat], z: C64) -> Mat {
    let n = hs.first().map_or(1, |m| m.dim());
    let mut acc = Mat::zeros(n);
    for c in hs.iter().rev() {
        acc = (acc + c).scale(z);
    }
    acc + Mat::identity(n)
}

/// Truncated `H(z) z^A W0`.
pub fn frobenius_eval(h: &MatPoly, hs: &[Mat], w0: &Mat, z: C64) -> Result<Mat, WeightError> {
    let za = matrix_power(&h.coeff(0), z)?;
    Ok(frobenius_h(hs, z) * za * w0)
}

/// Taylor coefficients `w_0..w_{terms−1}` of the solution of `z W' = h W`
/// about a regular point `c ≠ 0` with `W(c) = w_c`.
pub fn taylor_coefficients(h: &MatPoly, c: C64, w_c: &Mat, terms: usize) -> Vec<Mat> {
    let g = h.taylor_shift(c);
    let d = g.degree();
    let mut w = Vec::with_capacity(terms);
    w.push(w_c.clone());
    // c (k+1) w_{k+1} + k w_k = Σ_j g_j w_{k−j}
    for k in 0..terms.saturating_sub(1) {
        let mut acc = -w[k].scale(re(k as f64));
        for j in 0..=d.min(k) {
            acc += g.coeff(j) * &w[k - j];
        }
        w.push(acc.scale(C64::new(1.0, 0.0) / (c * re((k + 1) as f64))));
    }
    w
}

const TAYLOR_MAX_TERMS: usize = 60;

/// Sums the Taylor series at offset `t`, adding terms until they fall below
/// `1e-18` of the running sum.
pub fn taylor_step(h: &MatPoly, c: C64, w_c: &Mat, t: C64) -> Mat {
    let coeffs = taylor_coefficients(h, c, w_c, TAYLOR_MAX_TERMS);
    let mut sum = Mat::zeros(w_c.dim());
    let mut tk = C64::new(1.0, 0.0);
    let mut small = 0;
    for w in &coeffs {
        let term = w.scale(tk);
        let tn = term.norm();
        sum += term;
        if tn <= 1e-18 * sum.norm() {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
        tk *= t;
    }
    sum
}

/// Safe Taylor step from a regular point `c` for `z W' = h W`.
pub fn taylor_radius(h: &MatPoly, c: f64) -> f64 {
    let hn = h.eval(re(c)).norm();
    (c / 4.0).min(1.0 / (1.0 + hn / c))
}

/// Which Pearson factor a local solution belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `z Φ' = h Φ`.
    Left,
    /// `z Φ' = Φ h`.
    Right,
}

/// Local fundamental solution about a regular point `center ≠ 0`,
/// normalized by `Φ(center) = I`.
#[derive(Clone, Debug)]
pub struct LocalFundamental {
    center: C64,
    side: Side,
    coeffs: Vec<Mat>,
}

impl LocalFundamental {
    pub fn new(h: &MatPoly, center: C64, side: Side) -> Self {
        let n = h.dim();
        let hh = match side {
            Side::Left => h.clone(),
            Side::Right => h.transpose(),
        };
        let coeffs = taylor_coefficients(&hh, center, &Mat::identity(n), TAYLOR_MAX_TERMS);
        LocalFundamental { center, side, coeffs }
    }

    pub fn center(&self) -> C64 {
        self.center
    }

    /// `Φ(z)`; accurate for `|z − center|` well inside `|center|`.
    pub fn eval(&self, z: C64) -> Mat {
        let t = z - self.center;
        let mut acc = Mat::zeros(self.coeffs[0].dim());
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(t) + c;
        }
        match self.side {
            Side::Left => acc,
            Side::Right => acc.transpose(),
        }
    }
}
