//! Matrix functions in double precision: `e^A`, `z^A`, spectra.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::LinalgError;
use crate::matrix::Mat;
use crate::scalar::C64;

/// `log z` with the argument taken in `[0, 2π)`, so the cut lies along the
/// positive real axis and positive reals get their real logarithm.
pub fn log_ray(z: C64) -> Result<C64, LinalgError> {
    if z == C64::new(0.0, 0.0) {
        return Err(LinalgError::ZeroArgument);
    }
    let mut arg = z.im.atan2(z.re);
    if arg < 0.0 {
        arg += 2.0 * PI;
    }
    Ok(C64::new(z.norm().ln(), arg))
}

/// Scaling and squaring with a truncated Taylor series.
///
/// Overflow is not trapped; callers check [`Mat::is_finite`] on the result.
pub fn matrix_exp(a: &Mat) -> Mat {
    let n = a.dim();
    let norm = a.norm1();
    let mut s = 0u32;
    if norm > 0.25 {
        s = (norm / 0.25).log2().ceil() as u32;
    }
    let scaled = a.scale(C64::new(0.5f64.powi(s as i32), 0.0));
    let mut term = Mat::identity(n);
    let mut sum = Mat::identity(n);
    for k in 1..=24 {
        term = (&term * &scaled).scale(C64::new(1.0 / k as f64, 0.0));
        sum += &term;
        if term.max_abs() <= 1e-18 * sum.max_abs() {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// `z^A = e^{A log z}` on the branch of [`log_ray`].
pub fn matrix_power(a: &Mat, z: C64) -> Result<Mat, LinalgError> {
    let l = log_ray(z)?;
    Ok(matrix_exp(&a.scale(l)))
}

/// Eigenvalues from a complex Schur form.
pub fn eigenvalues(a: &Mat) -> Result<Vec<C64>, LinalgError> {
    let n = a.dim();
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    let m = DMatrix::from_fn(n, n, |i, j| a[(i, j)]);
    let schur = m.try_schur(1e-15, 10_000).ok_or(LinalgError::EigenFailure)?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Smallest `|λ − μ|` over `λ ∈ σ(P)`, `μ ∈ σ(Q)`.
pub fn spectral_gap(p: &Mat, q: &Mat) -> Result<f64, LinalgError> {
    let ep = eigenvalues(p)?;
    let eq = eigenvalues(q)?;
    let mut gap = f64::INFINITY;
    for a in &ep {
        for b in &eq {
            gap = gap.min((a - b).norm());
        }
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn exp_examples() {
        assert!(matrix_exp(&Mat::zeros(2)).dist(&Mat::identity(2)) < 1e-15);
        let d = matrix_exp(&Mat::real_diag(&[1.0, 2.0]));
        assert!((d[(0, 0)] - c(1f64.exp())).norm() < 1e-14);
        assert!((d[(1, 1)] - c(2f64.exp())).norm() < 1e-13);
        let nil = Mat::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matrix_exp(&nil).dist(&Mat::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]])) < 1e-15);
    }

    #[test]
    fn exp_of_large_rotation() {
        let a = Mat::from_real_rows(&[&[0.0, -20.0], &[20.0, 0.0]]);
        let e = matrix_exp(&a);
        assert!((e[(0, 0)] - c(20f64.cos())).norm() < 1e-12);
        assert!((e[(1, 0)] - c(20f64.sin())).norm() < 1e-12);
    }

    #[test]
    fn power_examples() {
        let a = Mat::real_diag(&[0.5, -0.5]);
        let p = matrix_power(&a, c(4.0)).unwrap();
        assert!(p.dist(&Mat::real_diag(&[2.0, 0.5])) < 1e-14);

        let nil = Mat::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let p = matrix_power(&nil, c(std::f64::consts::E)).unwrap();
        assert!(p.dist(&Mat::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]])) < 1e-14);

        let jordan = Mat::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let p = matrix_power(&jordan, c(2.0)).unwrap();
        let l2 = 2f64.ln();
        assert!(p.dist(&Mat::from_real_rows(&[&[2.0, 2.0 * l2], &[0.0, 2.0]])) < 1e-14);

        assert_eq!(matrix_power(&jordan, c(0.0)), Err(LinalgError::ZeroArgument));
    }

    #[test]
    fn branch_cut_on_positive_axis() {
        let above = log_ray(C64::new(2.0, 1e-12)).unwrap();
        let below = log_ray(C64::new(2.0, -1e-12)).unwrap();
        assert!(above.im.abs() < 1e-11);
        assert!((below.im - 2.0 * PI).abs() < 1e-11);
        assert!((log_ray(c(-1.0)).unwrap().im - PI).abs() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_triangular_and_rotation() {
        let t = Mat::from_real_rows(&[&[1.0, 5.0], &[0.0, 0.5]]);
        let mut ev: Vec<f64> = eigenvalues(&t).unwrap().iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] - 0.5).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
        let r = Mat::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let ev = eigenvalues(&r).unwrap();
        assert!(ev.iter().all(|z| (z.norm() - 1.0).abs() < 1e-14 && z.re.abs() < 1e-14));
    }
}
