use matbiorth_linalg::{matrix_exp, matrix_power, solve_sylvester, sylvester_residual, Mat, MatPoly, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn mat(n: usize, range: f64) -> impl Strategy<Value = Mat> {
    prop::collection::vec((-range..range, -range..range), n * n)
        .prop_map(move |v| Mat::from_row_major(n, v.into_iter().map(|(a, b)| c(a, b)).collect()))
}

/// Upper triangular with a prescribed diagonal.
fn triangular(diag: Vec<C64>, upper: Vec<C64>) -> Mat {
    let n = diag.len();
    let mut k = 0;
    Mat::from_fn(n, |i, j| {
        if i == j {
            diag[i]
        } else if j > i {
            k += 1;
            upper[k - 1]
        } else {
            c(0.0, 0.0)
        }
    })
}

fn poly_of(a: &Mat, coeffs: &[(f64, f64)]) -> Mat {
    let p = MatPoly::new(coeffs.iter().map(|&(x, y)| Mat::scalar(a.dim(), c(x, y))).collect());
    // p(A) by Horner
    let mut acc = Mat::zeros(a.dim());
    for k in (0..=p.degree()).rev() {
        acc = &acc * a + p.coeff(k);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exp_of_commuting_sum(a in mat(3, 0.8), coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 3)) {
        // B is a polynomial in A, so the pair commutes
        let b = poly_of(&a, &coeffs);
        let lhs = matrix_exp(&(&a + &b));
        let rhs = matrix_exp(&a) * matrix_exp(&b);
        prop_assert!(lhs.dist(&rhs) <= 1e-10 * lhs.norm().max(1.0));
    }

    #[test]
    fn power_times_negative_power_is_identity(
        a in mat(2, 1.0),
        r in 0.1f64..10.0,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let a = if a.norm() > 2.0 { a.scale(c(2.0 / a.norm(), 0.0)) } else { a };
        let z = C64::from_polar(r, theta);
        let (plus, minus) = (matrix_power(&a, z).unwrap(), matrix_power(&(-&a), z).unwrap());
        // rounding in the product scales with ‖z^A‖‖z^-A‖, which reaches e^8 here
        let scale = (plus.norm() * minus.norm()).max(1.0);
        prop_assert!((&plus * &minus).dist(&Mat::identity(2)) <= 1e-10 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sylvester_residual_bound(
        n in 1usize..=4,
        seed in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 64),
        shift in 0.5f64..3.0,
        sign in prop::bool::ANY,
    ) {
        // P and Q upper triangular with diagonals in half planes separated by ≥ 0.5
        let off = n * (n - 1) / 2;
        let s = if sign { 1.0 } else { -1.0 };
        let dp: Vec<C64> = (0..n).map(|i| c(s * (shift / 2.0 + seed[i].0.abs()), seed[i].1)).collect();
        let dq: Vec<C64> = (0..n).map(|i| c(-s * (shift / 2.0 + seed[8 + i].0.abs()), seed[8 + i].1)).collect();
        let up: Vec<C64> = (0..off).map(|i| c(seed[16 + i].0, seed[16 + i].1)).collect();
        let uq: Vec<C64> = (0..off).map(|i| c(seed[24 + i].0, seed[24 + i].1)).collect();
        let p0 = triangular(dp, up);
        let q0 = triangular(dq, uq);
        // dense similarity keeps the spectra but fills the matrices
        let v = Mat::from_fn(n, |i, j| if i == j { c(1.0, 0.0) } else { c(seed[32 + i * 4 + j].0 * 0.3, seed[32 + i * 4 + j].1 * 0.3) });
        let vi = v.inverse().unwrap();
        let p = &v * &p0 * &vi;
        let q = &vi * &q0 * &v;
        let r = Mat::from_fn(n, |i, j| c(seed[48 + i * 4 + j].0, seed[48 + i * 4 + j].1));
        let x = solve_sylvester(&p, &q, &r).unwrap();
        let bound = 1e-10 * (p.norm() + q.norm()) * x.norm() + 1e-12 * r.norm();
        prop_assert!(sylvester_residual(&x, &p, &q, &r) <= bound);
    }
}
