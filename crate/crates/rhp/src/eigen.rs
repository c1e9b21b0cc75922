use matbiorth_biorth::BiorthSystem;
use matbiorth_linalg::{eigenvalues, Mat, MatPoly, C64};
use matbiorth_moments::{MomentError, MomentTable};
use matbiorth_weights::PearsonData;

use crate::error::RhpError;
use crate::frame::Frame;

/// Eigenvalue data of one degree.
#[derive(Clone, Debug)]
pub struct EigenCheck {
    pub n: usize,
    pub lambda_l: Mat,
    pub lambda_r: Mat,
    /// Largest coefficient of `ℒᴸ(Pₙᴸ) − λₙᴸ Pₙᴸ`, relative.
    pub residual_l: f64,
    pub residual_r: f64,
    /// `‖λₙᴸ Cₙ⁻¹ − Cₙ⁻¹ λₙᴿ‖` relative to `‖λₙᴸ‖ ‖Cₙ⁻¹‖`.
    pub intertwining: f64,
}

/// Constant terms of `N(hᴸ)` and `N(hᴿ)` for `h = A z + B`:
/// `αᴸ = Aᴸ + AᴸBᴸ + BᴸAᴸ`, and likewise on the right. With these the
/// constraint `(αᴸ − bᴸ) W = W (αᴿ − bᴿ)` reduces to `(Aᴸ)² W = W (Aᴿ)²`
/// and `(Bᴸ)² W = W (Bᴿ)²`.
pub fn default_alphas(pearson: &PearsonData) -> (Mat, Mat) {
    let c = |h: &MatPoly| {
        let (b, a) = (h.coeff(0), h.coeff(1));
        &a + &(&a * &b) + &b * &a
    };
    (c(&pearson.h_l), c(&pearson.h_r))
}

/// Degree one data with leading coefficients whose spectra lie in the open
/// left half-plane.
pub fn check_degree_one(pearson: &PearsonData) -> Result<(), RhpError> {
    for (name, h) in [("left", &pearson.h_l), ("right", &pearson.h_r)] {
        if h.degree() != 1 {
            return Err(RhpError::Precondition(format!("{name} Pearson factor has degree {}, not 1", h.degree())));
        }
        let worst = eigenvalues(&h.coeff(1))?.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
        if worst >= 0.0 {
            return Err(RhpError::Precondition(format!("{name} leading coefficient is not negative definite")));
        }
    }
    Ok(())
}

fn z_times(p: &MatPoly) -> MatPoly {
    p.shift_up()
}

/// `ℒᴸ(P) = z P'' + P' aᴸ + P αᴸ` with `aᴸ = 2hᴸ + I`.
pub fn operator_left(p: &MatPoly, pearson: &PearsonData, alpha_l: &Mat) -> MatPoly {
    let d1 = p.derivative();
    z_times(&d1.derivative()).add(&d1.mul(&pearson.a_left())).add(&p.right_mul(alpha_l))
}

/// `ℒᴿ(P) = z P'' + aᴿ P' + αᴿ P`.
pub fn operator_right(p: &MatPoly, pearson: &PearsonData, alpha_r: &Mat) -> MatPoly {
    let d1 = p.derivative();
    z_times(&d1.derivative()).add(&pearson.a_right().mul(&d1)).add(&p.left_mul(alpha_r))
}

/// Extracts `λₙ` from the `zⁿ` coefficient of `ℒ(Pₙ)` (monic `Pₙ`) and
/// measures the rest of the eigen equation.
pub fn eigenvalue_check(
    sys: &BiorthSystem,
    pearson: &PearsonData,
    n: usize,
    alphas: Option<(Mat, Mat)>,
    tol: f64,
) -> Result<EigenCheck, RhpError> {
    check_degree_one(pearson)?;
    if n > sys.n_max {
        return Err(RhpError::DegreeOutOfRange { n, lo: 0, hi: sys.n_max });
    }
    let (al, ar) = alphas.unwrap_or_else(|| default_alphas(pearson));
    let (pl, pr) = (&sys.pl[n], &sys.pr[n]);
    let ll = operator_left(pl, pearson, &al);
    let lr = operator_right(pr, pearson, &ar);
    let lambda_l = ll.coeff(n);
    let lambda_r = lr.coeff(n);
    let rel = |a: &MatPoly, b: &MatPoly| a.sub(b).max_coeff_norm() / a.max_coeff_norm().max(b.max_coeff_norm());
    let residual_l = rel(&ll, &pl.left_mul(&lambda_l));
    let residual_r = rel(&lr, &pr.right_mul(&lambda_r));
    let ci = &sys.c_inv[n];
    let intertwining = (&lambda_l * ci - ci * &lambda_r).norm() / (lambda_l.norm() * ci.norm()).max(f64::MIN_POSITIVE);
    let worst = residual_l.max(residual_r).max(intertwining);
    if worst > tol {
        return Err(RhpError::NotEigenfunction { n, residual: worst, tol });
    }
    Ok(EigenCheck { n, lambda_l, lambda_r, residual_l, residual_r, intertwining })
}

/// Pointwise residual of the second kind eigen equations
/// `z Q'' + Q'(−2hᴿ + I) + Q(αᴿ − 2Aᴿ) = λᴸ Q` (left) and
/// `z Q'' + (−2hᴸ + I) Q' + (αᴸ − 2Aᴸ) Q = Q λᴿ` (right), where `A` is the
/// leading coefficient of `h`. Uses the (1,2) or (2,1) block of the frame.
pub fn second_kind_eigen_residual(frame: &Frame, pearson: &PearsonData, eig: &EigenCheck, alphas: &(Mat, Mat)) -> f64 {
    use matbiorth_weights::Side;
    let z = frame.z;
    let dim = pearson.dim();
    let id = Mat::identity(dim);
    let two = C64::new(2.0, 0.0);
    let (al, ar) = alphas;
    let (q, dq, d2q) = match frame.side {
        Side::Left => (frame.y.get(0, 1), frame.dy.get(0, 1), frame.d2y.get(0, 1)),
        Side::Right => (frame.y.get(1, 0), frame.dy.get(1, 0), frame.d2y.get(1, 0)),
    };
    let zq = d2q.scale(z);
    let (b, c, d) = match frame.side {
        Side::Left => {
            let a = -pearson.h_r.eval(z).scale(two) + &id;
            (dq * &a, q * &(ar - pearson.h_r.coeff(1).scale(two)), &eig.lambda_l * q)
        }
        Side::Right => {
            let a = -pearson.h_l.eval(z).scale(two) + &id;
            (&a * dq, &(al - pearson.h_l.coeff(1).scale(two)) * q, q * &eig.lambda_r)
        }
    };
    let res = &zq + &b + &c - &d;
    res.norm() / [zq.norm(), b.norm(), c.norm(), d.norm()].into_iter().fold(f64::MIN_POSITIVE, f64::max)
}

/// `⟨F, G⟩ = Σ F_j W_{j+k} G_k` where `F` and `G` may carry a `z⁻¹` term.
fn form(
    f: &(MatPoly, Mat),
    g: &(MatPoly, Mat),
    table: &MomentTable,
    w_inv: Option<&Mat>,
) -> Result<(Mat, f64), RhpError> {
    let dim = table.dim();
    let moment = |k: isize| -> Result<&Mat, RhpError> {
        if k < 0 {
            return w_inv.ok_or_else(|| RhpError::Precondition("the pairing needs the moment of order −1".into()));
        }
        table
            .moments
            .get(k as usize)
            .ok_or(RhpError::Moment(MomentError::TableTooShort { need: k as usize + 1, have: table.len() }))
    };
    let terms = |p: &(MatPoly, Mat)| {
        let mut v: Vec<(isize, Mat)> = p.0.coeffs().iter().enumerate().map(|(j, c)| (j as isize, c.clone())).collect();
        if !p.1.is_zero() {
            v.push((-1, p.1.clone()));
        }
        v
    };
    let mut s = Mat::zeros(dim);
    let mut abs = 0.0;
    for (j, a) in terms(f) {
        if a.is_zero() {
            continue;
        }
        for (k, b) in terms(g) {
            if b.is_zero() {
                continue;
            }
            let w = moment(j + k)?;
            let t = &(&a * w) * &b;
            abs += a.norm() * w.norm() * b.norm();
            s += &t;
        }
    }
    Ok((s, abs))
}

/// `ℓᴸ(P) = z P'' + P' aᴸ + P bᴸ` as (polynomial part, `z⁻¹` coefficient).
fn ell_left(p: &MatPoly, pearson: &PearsonData) -> (MatPoly, Mat) {
    let b = pearson.b_left();
    let d1 = p.derivative();
    let poly = z_times(&d1.derivative()).add(&d1.mul(&pearson.a_left())).add(&p.mul(&b.regular));
    // P(z) B/z = P(0) B/z + (P(z) − P(0)) B / z
    let shifted = shift_down(&p.right_mul(&b.residue));
    (poly.add(&shifted), &p.coeff(0) * &b.residue)
}

fn ell_right(p: &MatPoly, pearson: &PearsonData) -> (MatPoly, Mat) {
    let b = pearson.b_right();
    let d1 = p.derivative();
    let poly = z_times(&d1.derivative()).add(&pearson.a_right().mul(&d1)).add(&b.regular.mul(p));
    let shifted = shift_down(&p.left_mul(&b.residue));
    (poly.add(&shifted), &b.residue * &p.coeff(0))
}

/// `(P(z) − P(0)) / z`.
fn shift_down(p: &MatPoly) -> MatPoly {
    if p.coeffs().len() == 1 {
        return MatPoly::zero(p.dim());
    }
    MatPoly::new(p.coeffs()[1..].to_vec())
}

/// Largest `|⟨ℓᴸ(P), Q⟩ − ⟨P, ℓᴿ(Q)⟩|` over monomial test pairs
/// `P = zʲ E_ab`, `Q = zᵏ E_cd`, `j ≤ d1`, `k ≤ d2`, relative to the sum of
/// absolute term sizes of the pairing. `w_inv` is `∫ x⁻¹ W`, needed only
/// when `N(h)` has a pole.
pub fn adjointness_check(
    pearson: &PearsonData,
    table: &MomentTable,
    w_inv: Option<&Mat>,
    d1: usize,
    d2: usize,
) -> Result<f64, RhpError> {
    let dim = pearson.dim();
    let unit = |a: usize, b: usize| {
        let mut m = Mat::zeros(dim);
        m[(a, b)] = C64::new(1.0, 0.0);
        m
    };
    let zero = Mat::zeros(dim);
    let mut worst: f64 = 0.0;
    for j in 0..=d1 {
        for k in 0..=d2 {
            for ab in 0..dim * dim {
                for cd in 0..dim * dim {
                    let p = MatPoly::monomial_with(unit(ab / dim, ab % dim), j);
                    let q = MatPoly::monomial_with(unit(cd / dim, cd % dim), k);
                    let (lhs, s1) = form(&ell_left(&p, pearson), &(q.clone(), zero.clone()), table, w_inv)?;
                    let (rhs, s2) = form(&(p, zero.clone()), &ell_right(&q, pearson), table, w_inv)?;
                    let scale = s1.max(s2).max(f64::MIN_POSITIVE);
                    worst = worst.max((lhs - rhs).norm() / scale);
                }
            }
        }
    }
    Ok(worst)
}
