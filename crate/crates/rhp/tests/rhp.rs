use matbiorth_biorth::{build_from_model, Built, SecondKindEvaluator};
use matbiorth_linalg::{c64, re, Block, Mat, MatPoly, Precision, C64};
use matbiorth_moments::{inverse_moment, QuadConfig};
use matbiorth_rhp::eigen::{operator_left, second_kind_eigen_residual};
use matbiorth_rhp::ode::first_order_ode_residual_wrong_sign;
use matbiorth_rhp::structure::{residue_circle, residue_from_frames};
use matbiorth_rhp::*;
use matbiorth_weights::corpus::{duran_grunbaum_commuting, freud_noncommuting, freud_scalar, laguerre};
use matbiorth_weights::{PearsonData, Side, WeightModel};
use proptest::prelude::*;

fn setup(m: &WeightModel, n_max: usize) -> (Built, SecondKindEvaluator) {
    let b = build_from_model(m, n_max, Precision::DoubleDouble, 1e-13).unwrap();
    let ev = SecondKindEvaluator::new(b.sys.clone(), m.clone(), QuadConfig::default());
    (b, ev)
}

fn e_e1_at_one() -> f64 {
    0.596_347_362_323_194
}

fn s(m: &Mat) -> C64 {
    m[(0, 0)]
}

#[test]
fn laguerre_frame_closed_form() {
    let (_, ev) = setup(&laguerre(0.0), 3);
    let f = assemble_y(&ev, 1, Side::Left, re(-1.0)).unwrap();
    let q0 = e_e1_at_one();
    // P₁ = z − 1, Q₁ = 1 + (z − 1) Q₀, C₀ = 1
    let expect = [[-2.0, 1.0 - 2.0 * q0], [-1.0, -q0]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((s(f.y.get(i, j)) - re(expect[i][j])).norm() < 1e-13, "({i},{j})");
        }
    }
    assert!(det_residual(&f) < 1e-8);
}

#[test]
fn normalization_at_infinity() {
    let (_, ev) = setup(&laguerre(0.5), 4);
    let z = C64::from_polar(1e4, 2.5);
    for n in 1..=3 {
        let f = assemble_y(&ev, n, Side::Left, z).unwrap();
        let d = Block::diag(Mat::scalar(1, z.powi(-(n as i32))), Mat::scalar(1, z.powi(n as i32)));
        assert!((&f.y * &d).dist(&Block::identity(1)) < 1e-2);
    }
}

#[test]
fn left_frame_inverse_is_swapped_right_frame() {
    let (_, ev) = setup(&freud_noncommuting(), 4);
    for z in [c64(-1.0, 0.5), c64(2.0, 1.0)] {
        for n in 1..=4 {
            let l = assemble_y(&ev, n, Side::Left, z).unwrap();
            let r = assemble_y(&ev, n, Side::Right, z).unwrap();
            assert!(left_right_residual(&l, &r).unwrap() < 1e-7);
        }
    }
}

#[test]
fn corollary_examples() {
    for (m, z) in [(laguerre(0.0), re(-2.0)), (duran_grunbaum_commuting(), c64(-1.0, 1.0))] {
        let (b, ev) = setup(&m, 3);
        let l = assemble_y(&ev, 1, Side::Left, z).unwrap();
        let r = assemble_y(&ev, 1, Side::Right, z).unwrap();
        for v in corollary_identities(&b.sys, &l, &r) {
            assert!(v < 1e-12, "{v:e}");
        }
    }
}

#[test]
fn corollary_detects_perturbed_second_kind_entry() {
    let (b, ev) = setup(&duran_grunbaum_commuting(), 3);
    let z = c64(-1.0, 1.0);
    let mut l = assemble_y(&ev, 2, Side::Left, z).unwrap();
    let r = assemble_y(&ev, 2, Side::Right, z).unwrap();
    let delta = 1e-4;
    let q = l.y.get(0, 1).scale(re(1.0 + delta));
    l.y = Block::new(l.y.get(0, 0).clone(), q, l.y.get(1, 0).clone(), l.y.get(1, 1).clone());
    let [first, _, third] = corollary_identities(&b.sys, &l, &r);
    for v in [first, third] {
        assert!(v > delta / 10.0 && v < delta * 10.0, "{v:e}");
    }
}

#[test]
fn transfer_examples() {
    let (b, ev) = setup(&laguerre(0.0), 3);
    let z = re(-1.0);
    for side in [Side::Left, Side::Right] {
        let cur = assemble_y(&ev, 1, side, z).unwrap();
        let next = assemble_y(&ev, 2, side, z).unwrap();
        assert!(transfer_residual(&b.sys, &cur, &next).unwrap() < 1e-13);
    }
    let (b, _) = setup(&freud_noncommuting(), 4);
    for n in 0..=4 {
        for side in [Side::Left, Side::Right] {
            let t = transfer_matrix(&b.sys, n, side, c64(0.3, -2.0)).unwrap();
            assert!((t.det() - re(1.0)).norm() < 1e-10);
        }
    }
}

#[test]
fn laguerre_structure_entry() {
    for alpha in [0.0, 0.5, 1.3] {
        let (b, ev) = setup(&laguerre(alpha), 5);
        for n in 1..=5 {
            let m = structure_matrix_explicit(&b.sys, ev.model().pearson_data(), n).unwrap();
            assert!(m.degree() <= 1);
            for z in [re(0.0), c64(1.0, 2.0)] {
                let expect = -z / 2.0 + n as f64 + alpha / 2.0;
                assert!((s(m.eval(z).get(0, 0)) - expect).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn degree_one_lower_left_entry() {
    let m = duran_grunbaum_commuting();
    let (b, _) = setup(&m, 5);
    let p = m.pearson_data();
    let (a1, a2) = (p.h_l.coeff(1), p.h_r.coeff(1));
    for n in 1..=5 {
        let st = structure_matrix_explicit(&b.sys, p, n).unwrap();
        let c = &b.sys.c[n - 1];
        let expect = -(c * &a1) - &a2 * c;
        let got = st.eval(c64(0.7, 0.2)).get(1, 0).clone();
        assert!(got.dist(&expect) < 1e-12 * expect.norm().max(1.0));
    }
}

/// The displayed quadratic-data entries with `±nI` added on the diagonal.
fn displayed_entries(b: &Built, p: &PearsonData, n: usize, z: C64) -> Block {
    let s = &b.sys;
    let (al, bl, cl) = (p.h_l.coeff(0), p.h_l.coeff(1), p.h_l.coeff(2));
    let (ar, br, cr) = (p.h_r.coeff(0), p.h_r.coeff(1), p.h_r.coeff(2));
    let (ci, cm) = (&s.c_inv[n], &s.c[n - 1]);
    let nn = Mat::scalar(p.dim(), re(n as f64));
    let hl = p.h_l.eval(z);
    let hr = p.h_r.eval(z);
    let m11 = ci * &cr * cm
        + hl
        + &bl * &s.q1_r[n - 1]
        + &s.p1_l[n] * &bl
        + (&cl * &s.q1_r[n - 1] + &s.p1_l[n] * &cl).scale(z)
        + &cl * &s.q2_r[n - 1]
        + &s.p2_l[n] * &cl
        + &s.p1_l[n] * &cl * &s.q1_r[n - 1]
        + &nn;
    let m12 = (&bl + cl.scale(z) + &cl * &s.q1_r[n] + &s.p1_l[n] * &cl) * ci
        + ci * (&br + cr.scale(z) + &cr * &s.p1_r[n] + &s.q1_l[n] * &cr);
    let m21 = -(cm * (&bl + cl.scale(z) + &cl * &s.q1_r[n - 1] + &s.p1_l[n - 1] * &cl))
        - (&br + cr.scale(z) + &cr * &s.p1_r[n - 1] + &s.q1_l[n - 1] * &cr) * cm;
    let m22 = -(cm * &cl * ci)
        - hr
        - &br * &s.p1_r[n]
        - &s.q1_l[n - 1] * &br
        - (&cr * &s.p1_r[n] + &s.q1_l[n - 1] * &cr).scale(z)
        - &cr * &s.p2_r[n]
        - &s.q2_l[n - 1] * &cr
        - &s.q1_l[n - 1] * &cr * &s.p1_r[n]
        - &nn;
    let _ = (al, ar);
    Block::new(m11, m12, m21, m22)
}

#[test]
fn explicit_structure_matches_displayed_entries() {
    for m in [freud_noncommuting(), duran_grunbaum_commuting(), freud_scalar(1.0, -2.0)] {
        let (b, _) = setup(&m, 5);
        let p = m.pearson_data();
        for n in 1..=5 {
            let st = structure_matrix_explicit(&b.sys, p, n).unwrap();
            for z in [re(0.0), c64(-1.5, 0.4), c64(3.0, -2.0)] {
                let d = displayed_entries(&b, p, n, z);
                assert!(st.eval(z).dist(&d) <= 1e-9 * d.norm(), "n {n} z {z}: {:e}", st.eval(z).dist(&d) / d.norm());
            }
        }
    }
}

#[test]
fn scalar_freud_upper_right_entry() {
    // C_n⁻¹(B + Cz + Cβ_n) once the scalars commute
    let m = freud_scalar(0.5, -1.0);
    let (b, _) = setup(&m, 5);
    for n in 1..=5 {
        let st = structure_matrix_explicit(&b.sys, m.pearson_data(), n).unwrap();
        let z = c64(0.4, 1.1);
        let expect = s(&b.sys.c_inv[n]) * (-z + -s(&b.sys.beta_l[n]));
        let got = s(st.eval(z).get(0, 1));
        assert!((got - expect).norm() < 1e-9 * expect.norm());
    }
}

#[test]
fn numeric_structure_matrix_examples() {
    let m = laguerre(0.0);
    let (b, ev) = setup(&m, 3);
    let exact = structure_matrix_explicit(&b.sys, m.pearson_data(), 1).unwrap();
    let (num, est) = structure_matrix_numeric(&ev, 1, Side::Left, re(-1.0), 1e-4).unwrap();
    assert!(num.dist(&exact.eval(re(-1.0))) < 1e-6);
    assert!(est < 1e-6);
    let (num, _) = structure_matrix_numeric(&ev, 1, Side::Left, c64(-1.0, 0.7), 1e-4).unwrap();
    assert!(num.dist(&exact.eval(c64(-1.0, 0.7))) < 1e-6);
}

#[test]
fn residue_of_structure_matrix() {
    let m = freud_noncommuting();
    let (b, ev) = setup(&m, 3);
    let p = m.pearson_data();
    for n in 1..=3 {
        let exact = structure_matrix_explicit(&b.sys, p, n).unwrap().pole_residue();
        for r in [0.1, 0.05] {
            let frames: Vec<Frame> =
                residue_circle(r).into_iter().map(|z| assemble_y(&ev, n, Side::Left, z).unwrap()).collect();
            let fit = residue_from_frames(&frames, p).unwrap();
            assert!(fit.dist(&exact) <= 1e-5 * exact.norm().max(1.0));
        }
    }
}

#[test]
fn zero_curvature_examples() {
    let (b, _) = setup(&laguerre(0.0), 3);
    let p = laguerre(0.0);
    assert!(zero_curvature_residual(&b.sys, p.pearson_data(), 1, Side::Left).unwrap() < 1e-12);
    let m = freud_noncommuting();
    let (b, _) = setup(&m, 4);
    for side in [Side::Left, Side::Right] {
        assert!(zero_curvature_residual(&b.sys, m.pearson_data(), 2, side).unwrap() < 1e-7);
    }
}

#[test]
fn zero_curvature_detects_perturbed_beta() {
    let m = freud_noncommuting();
    let (b, _) = setup(&m, 4);
    let mut sys = b.sys.clone();
    let delta = 1e-5;
    let bump = Mat::scalar(2, re(delta * sys.beta_l[2].norm()));
    sys.beta_l[2] += &bump;
    let r = zero_curvature_residual(&sys, m.pearson_data(), 2, Side::Left).unwrap();
    assert!(r > delta / 100.0, "{r:e}");
}

#[test]
fn first_order_ode_examples() {
    let m = laguerre(0.0);
    let (b, ev) = setup(&m, 3);
    let p = m.pearson_data();
    let z = re(-1.0);
    let ml = structure_matrix_explicit(&b.sys, p, 1).unwrap();
    let mr = structure_matrix_explicit_right(&b.sys, p, 1).unwrap();
    let fl = assemble_y(&ev, 1, Side::Left, z).unwrap();
    let fr = assemble_y(&ev, 1, Side::Right, z).unwrap();
    assert!(first_order_ode_residual(&fl, p, &ml) < 1e-12);
    assert!(first_order_ode_residual(&fr, p, &mr) < 1e-12);
    assert!(first_order_ode_residual_wrong_sign(&fl, p, &ml) > 1e-2);
    assert!(second_order_ode_residual(&fl, p, &ml).unwrap() < 1e-12);
    assert!(second_order_ode_residual(&fr, p, &mr).unwrap() < 1e-12);
}

#[test]
fn n_transform_examples() {
    let z1 = MatPoly::new(vec![Mat::zeros(1), Mat::identity(1)]);
    let t = NTransform::of(&z1);
    assert!(!t.has_pole());
    assert!((s(&t.eval(re(2.0)).unwrap()) - re(3.0)).norm() < 1e-15);
    let a = Mat::from_real_rows(&[&[1.0, 2.0], &[0.0, 3.0]]);
    let nil = Mat::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
    assert!(NTransform::of(&MatPoly::new(vec![nil, a.clone()])).eval(re(0.0)).is_ok());
    let pole = NTransform::of(&MatPoly::new(vec![Mat::identity(2), a]));
    assert_eq!(pole.eval(re(0.0)), Err(RhpError::PoleAtZero));
    let alpha = 0.7;
    let h = laguerre(alpha).pearson_data().h_l.clone();
    let z = c64(0.3, 0.9);
    let direct = -0.5 + (-z / 2.0 + alpha / 2.0).powi(2) / z;
    assert!((s(&NTransform::of(&h).eval(z).unwrap()) - direct).norm() < 1e-15);
}

#[test]
fn laguerre_eigenvalues_and_classical_equations() {
    for alpha in [0.0, 0.5, 1.3] {
        let m = laguerre(alpha);
        let (b, ev) = setup(&m, 6);
        let p = m.pearson_data();
        let alphas = default_alphas(p);
        for n in 0..=6 {
            let e = eigenvalue_check(&b.sys, p, n, None, 1e-8).unwrap();
            assert!((s(&e.lambda_l) - re(-(n as f64) - (1.0 + alpha) / 2.0)).norm() < 1e-12);
            // z P'' − (z − α − 1) P' + n P as a polynomial
            let pn = &b.sys.pl[n];
            let shifted = operator_left(pn, p, &alphas.0).sub(&pn.left_mul(&e.lambda_l));
            assert!(shifted.max_coeff_norm() <= 1e-6 * pn.max_coeff_norm());
            if n >= 1 {
                for z in [c64(-1.0, 0.0), c64(2.0, 1.0), c64(0.3, -0.5)] {
                    let f = assemble_y(&ev, n, Side::Left, z).unwrap();
                    // z Q'' + (z − α + 1) Q' + (n + 1) Q
                    assert!(second_kind_eigen_residual(&f, p, &e, &alphas) < 1e-6);
                    let (q, dq, d2q) = (s(f.y.get(0, 1)), s(f.dy.get(0, 1)), s(f.d2y.get(0, 1)));
                    let r = z * d2q + (z - alpha + 1.0) * dq + (n as f64 + 1.0) * q;
                    assert!(r.norm() <= 1e-6 * (z * d2q).norm().max(q.norm()));
                }
            }
        }
    }
}

#[test]
fn commuting_matrix_model_eigenfunctions() {
    let m = duran_grunbaum_commuting();
    let (b, _) = setup(&m, 6);
    for n in 0..=6 {
        let e = eigenvalue_check(&b.sys, m.pearson_data(), n, None, 1e-8).unwrap();
        let expect = m.pearson_data().h_l.coeff(1).scale(re(2.0 * n as f64)) + default_alphas(m.pearson_data()).0;
        assert!(e.lambda_l.dist(&expect) < 1e-10);
    }
}

#[test]
fn constraint_violation_is_not_an_eigenproblem() {
    let a1 = Mat::from_real_rows(&[&[-1.0, 0.4], &[0.0, -0.8]]);
    let m = WeightModel::duran_grunbaum(a1.clone(), a1.transpose(), Mat::identity(2).scale(re(0.5))).unwrap();
    let (b, _) = setup(&m, 3);
    let r = eigenvalue_check(&b.sys, m.pearson_data(), 2, None, 1e-8);
    assert!(matches!(r, Err(RhpError::NotEigenfunction { .. })), "{r:?}");
    // an unrelated α on the commuting model fails too
    let m = duran_grunbaum_commuting();
    let (b, _) = setup(&m, 3);
    let (al, ar) = default_alphas(m.pearson_data());
    let e = Mat::from_real_rows(&[&[0.0, 0.0], &[0.3, 0.0]]);
    let r = eigenvalue_check(&b.sys, m.pearson_data(), 2, Some((al + &e, ar)), 1e-8);
    assert!(matches!(r, Err(RhpError::NotEigenfunction { .. })));
}

#[test]
fn degree_two_data_is_refused_by_eigen_check() {
    let m = freud_noncommuting();
    let (b, _) = setup(&m, 2);
    assert!(matches!(eigenvalue_check(&b.sys, m.pearson_data(), 1, None, 1e-8), Err(RhpError::Precondition(_))));
}

#[test]
fn adjointness_examples() {
    for m in [laguerre(0.0), laguerre(0.5), duran_grunbaum_commuting()] {
        let b = build_from_model(&m, 4, Precision::Double, 1e-13).unwrap();
        let w_inv = inverse_moment(&m, 1e-13).ok().map(|x| x.0);
        let r = adjointness_check(m.pearson_data(), &b.quadrature, w_inv.as_ref(), 3, 3).unwrap();
        assert!(r < 1e-7, "{r:e}");
    }
}

#[test]
fn adjointness_detects_perturbed_right_factor() {
    let m = duran_grunbaum_commuting();
    let b = build_from_model(&m, 4, Precision::Double, 1e-13).unwrap();
    let w_inv = inverse_moment(&m, 1e-13).unwrap().0;
    let p = m.pearson_data();
    let delta = 1e-4;
    let mut h_r = p.h_r.coeffs().to_vec();
    h_r[1] = h_r[1].scale(re(1.0 + delta));
    let bad = PearsonData { h_r: MatPoly::new(h_r), ..p.clone() };
    let r = adjointness_check(&bad, &b.quadrature, Some(&w_inv), 3, 3).unwrap();
    assert!(r > delta / 100.0 && r < delta * 10.0, "{r:e}");
}

#[test]
fn points_on_the_ray_are_refused() {
    let (_, ev) = setup(&laguerre(0.0), 2);
    assert!(matches!(
        assemble_y(&ev, 1, Side::Left, c64(1.0, 1e-3)),
        Err(RhpError::Biorth(matbiorth_biorth::BiorthError::TooCloseToSupport { .. }))
    ));
}

#[test]
fn suite_filtering_and_ring() {
    let m = laguerre(0.5);
    let (b, ev) = setup(&m, 3);
    let input =
        SuiteInput { ev: &ev, table: &b.quadrature, w_inv: None, n_check: 3, families: &[Family::ZeroCurvature] };
    let recs = run_suite(&input).unwrap();
    assert!(!recs.is_empty() && recs.iter().all(|r| r.check.starts_with("zero_curvature") && r.pass));
    let ring = z_ring();
    assert_eq!(ring.len(), 21);
    assert!(ring.iter().all(|&z| matbiorth_biorth::distance_to_ray(z) >= 0.3));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn determinant_is_one_off_the_ray(r in 0.3f64..10.0, theta in 0.2f64..6.08) {
        let (_, ev) = setup(&duran_grunbaum_commuting(), 5);
        let z = C64::from_polar(r, theta);
        let set = FrameSet::at(&ev, z, Side::Left).unwrap();
        for n in 1..=5 {
            prop_assert!(det_residual(set.get(n).unwrap()) < 1e-7);
        }
    }

    #[test]
    fn right_structure_matrix_is_conjugated_left(n in 1usize..5, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let m = freud_noncommuting();
        let (b, _) = setup(&m, 5);
        let p = m.pearson_data();
        let l = structure_matrix_explicit(&b.sys, p, n).unwrap();
        let r = structure_matrix_explicit_right(&b.sys, p, n).unwrap();
        let z = c64(x, y);
        let conj = (&(&Block::j(2) * &l.eval(z)) * &Block::j_inv(2)).scale(re(-1.0));
        prop_assert!(r.eval(z).dist(&conj) <= 1e-14 * conj.norm());
    }
}
