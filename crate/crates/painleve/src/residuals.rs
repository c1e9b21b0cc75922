use matbiorth_linalg::{par, re, Mat};

use crate::data::DPIVData;
use crate::error::PainleveError;

/// Pairwise commutator defect allowed by [`commutative_xi_mu`], relative to
/// the product of norms.
pub const COMMUTATIVITY_TOL: f64 = 1e-10;

/// Left-minus-right of one equation, raw and relative to its largest term.
#[derive(Clone, Debug)]
pub struct DpivResidual {
    pub residual: Mat,
    pub norm: f64,
    pub relative: f64,
}

impl DpivResidual {
    fn from_terms(lhs: &[Mat], rhs: &[Mat]) -> Self {
        let dim = lhs[0].dim();
        let l = lhs.iter().fold(Mat::zeros(dim), |a, t| a + t);
        let r = rhs.iter().fold(Mat::zeros(dim), |a, t| a + t);
        let scale = lhs.iter().chain(rhs).map(Mat::norm).fold(0.0, f64::max);
        let residual = l - r;
        let norm = residual.norm();
        DpivResidual { relative: norm / scale.max(f64::MIN_POSITIVE), norm, residual }
    }
}

fn comm(x: &Mat, y: &Mat) -> Mat {
    x.commutator(y)
}

/// Both non-Abelian equations at degree `n ≥ 1`:
///
/// `(2n+1)I + A + C(γ_{n+1} + γₙ) + (Cβₙ + B)βₙ = [p¹ₙ, C]p¹_{n+1} − [p²ₙ, C] − [p¹ₙ, B]`,
///
/// `βₙ − γₙ(C(βₙ + β_{n−1}) + B) + (C(βₙ + β_{n+1}) + B)γ_{n+1} = γₙ[p¹_{n−1}, C] − [p¹ₙ, C]γ_{n+1}`.
pub fn dpiv_residuals(d: &DPIVData, n: usize) -> Result<(DpivResidual, DpivResidual), PainleveError> {
    if n == 0 {
        return Err(PainleveError::Precondition("dPIV residuals start at n = 1".into()));
    }
    d.need(n, n + 1)?;
    let (a, b, c) = (&d.a, &d.b, &d.c);
    let (bn, bm, bp) = (&d.beta[n], &d.beta[n - 1], &d.beta[n + 1]);
    let (gn, gp) = (&d.gamma[n], &d.gamma[n + 1]);
    let (p1n, p1m, p1p) = (d.p1(n), d.p1(n - 1), d.p1(n + 1));
    let first = DpivResidual::from_terms(
        &[Mat::scalar(d.dim(), re((2 * n + 1) as f64)), a.clone(), c * &(gp + gn), &(c * bn + b) * bn],
        &[comm(&p1n, c) * &p1p, -comm(&d.p2(n), c), -comm(&p1n, b)],
    );
    let second = DpivResidual::from_terms(
        &[bn.clone(), -(gn * &(c * &(bn + bm) + b)), &(c * &(bn + bp) + b) * gp],
        &[gn * &comm(&p1m, c), -(comm(&p1n, c) * gp)],
    );
    Ok((first, second))
}

/// The same equations restricted to `B = 0`; refuses other data.
pub fn nonabelian_theorem_residuals(d: &DPIVData, n: usize) -> Result<(DpivResidual, DpivResidual), PainleveError> {
    if !d.b.is_zero() {
        return Err(PainleveError::Precondition("the non-Abelian theorem needs B = 0".into()));
    }
    dpiv_residuals(d, n)
}

/// One row of the residual table.
#[derive(Clone, Debug, PartialEq)]
pub struct DpivRow {
    pub n: usize,
    pub residual1_norm: f64,
    pub residual2_norm: f64,
    pub relative1: f64,
    pub relative2: f64,
}

/// Rows for `n = 1..=n_last`, evaluated concurrently.
pub fn dpiv_table(d: &DPIVData, n_last: usize) -> Result<Vec<DpivRow>, PainleveError> {
    par::map_range(n_last, |i| {
        let n = i + 1;
        dpiv_residuals(d, n).map(|(r1, r2)| DpivRow {
            n,
            residual1_norm: r1.norm,
            residual2_norm: r2.norm,
            relative1: r1.relative,
            relative2: r2.relative,
        })
    })
    .into_iter()
    .collect()
}

/// `ξₙ = A/2 + nI + Cγₙ`, `μₙ = Cβₙ + B` and the residuals of
/// `βₙμₙ = −(ξₙ + ξ_{n+1})` and `ξ_{n+1}² − ξ₀² = γ_{n+1}μₙμ_{n+1}`.
#[derive(Clone, Debug)]
pub struct XiMu {
    pub xi: Mat,
    pub mu: Mat,
    pub first: DpivResidual,
    pub second: DpivResidual,
}

fn xi(d: &DPIVData, n: usize) -> Mat {
    d.a.scale(re(0.5)) + Mat::scalar(d.dim(), re(n as f64)) + &d.c * &d.gamma[n]
}

fn mu(d: &DPIVData, n: usize) -> Mat {
    &d.c * &d.beta[n] + &d.b
}

fn commutativity_defect(ms: &[&Mat]) -> f64 {
    let mut worst = 0.0f64;
    for (i, x) in ms.iter().enumerate() {
        for y in &ms[i + 1..] {
            let scale = (x.norm() * y.norm()).max(1.0);
            worst = worst.max(x.commutator(y).norm() / scale);
        }
    }
    worst
}

fn require_commuting(d: &DPIVData, upto: usize) -> Result<(), PainleveError> {
    let mut ms = vec![&d.a, &d.b, &d.c];
    ms.extend(d.beta[..=upto].iter());
    ms.extend(d.gamma[..=upto].iter());
    let defect = commutativity_defect(&ms);
    if defect > COMMUTATIVITY_TOL {
        return Err(PainleveError::CommutativityViolation { defect, tol: COMMUTATIVITY_TOL });
    }
    Ok(())
}

pub fn commutative_xi_mu(d: &DPIVData, n: usize) -> Result<XiMu, PainleveError> {
    d.need(n, n + 1)?;
    require_commuting(d, n + 1)?;
    let (x0, xn, xp) = (xi(d, 0), xi(d, n), xi(d, n + 1));
    let (mn, mp) = (mu(d, n), mu(d, n + 1));
    let first = DpivResidual::from_terms(&[&d.beta[n] * &mn], &[-&xn, -&xp]);
    let second = DpivResidual::from_terms(&[xp.square(), -x0.square()], &[&(&d.gamma[n + 1] * &mn) * &mp]);
    Ok(XiMu { xi: xn, mu: mn, first, second })
}

/// Residual of `(ξₙ + ξ_{n+1})(ξ_{n+1} + ξ_{n+2}) = (F⁻¹(ξ_{n+1}² − ξ₀²))²`.
#[derive(Clone, Debug)]
pub struct GhrResidual {
    pub residual: Mat,
    pub norm: f64,
    pub relative: f64,
}

const SINGULAR_TOL: f64 = 1e-12;

fn ghr_with_shift(d: &DPIVData, n: usize, shift: usize) -> Result<GhrResidual, PainleveError> {
    if !d.b.is_zero() {
        return Err(PainleveError::Precondition("the GHR instance needs B = 0".into()));
    }
    d.need(n, n + 2)?;
    require_commuting(d, n + 2)?;
    let (x0, xn, xp, xpp) = (xi(d, 0), xi(d, n), xi(d, n + 1), xi(d, n + 2));
    let factor = &xp - d.a.scale(re(0.5)) - Mat::scalar(d.dim(), re(shift as f64));
    let det = factor.det().norm() / factor.norm().powi(d.dim() as i32).max(f64::MIN_POSITIVE);
    if det < SINGULAR_TOL {
        return Err(PainleveError::SingularFactor { n, det });
    }
    let inv = factor.inverse().map_err(|_| PainleveError::SingularFactor { n, det })?;
    let lhs = (&xn + &xp) * (&xp + &xpp);
    let rhs = (inv * (xp.square() - x0.square())).square();
    let residual = &lhs - &rhs;
    let norm = residual.norm();
    let scale = lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE);
    Ok(GhrResidual { relative: norm / scale, norm, residual })
}

/// The inverted factor is `ξ_{n+1} − A/2 − (n+1)I = Cγ_{n+1}`.
pub fn ghr_instance_residual(d: &DPIVData, n: usize) -> Result<GhrResidual, PainleveError> {
    ghr_with_shift(d, n, n + 1)
}

/// The same identity with the factor shifted by `nI` instead of `(n+1)I`;
/// it does not hold and serves as a control.
pub fn ghr_printed_shift_residual(d: &DPIVData, n: usize) -> Result<GhrResidual, PainleveError> {
    ghr_with_shift(d, n, n)
}
