use std::f64::consts::PI;

use matbiorth_biorth::SecondKindEvaluator;
use matbiorth_linalg::{par, Mat, C64};
use matbiorth_moments::MomentTable;
use matbiorth_weights::Side;

use crate::eigen::{adjointness_check, check_degree_one, default_alphas, eigenvalue_check, second_kind_eigen_residual};
use crate::error::RhpError;
use crate::frame::{Frame, FrameSet};
use crate::identities::{corollary_identities, det_residual, left_right_residual, transfer_residual};
use crate::ode::{first_order_ode_residual, second_order_ode_residual};
use crate::structure::{
    residue_circle, residue_from_frames, structure_matrix_explicit, structure_matrix_explicit_right,
    zero_curvature_residual, Stencil, StructureMatrix,
};

/// One check instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub check: &'static str,
    pub n: usize,
    pub z: Option<C64>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Record {
    pub fn new(check: &'static str, n: usize, z: Option<C64>, residual: f64, tolerance: f64) -> Self {
        // NaN never passes
        let pass = residual <= tolerance;
        Record { check, n, z, residual, tolerance, pass }
    }
}

/// Families of checks, selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Determinant,
    Corollary,
    LeftRight,
    Transfer,
    Derivative,
    StructureNumeric,
    StructureResidue,
    ZeroCurvature,
    FirstOrderOde,
    SecondOrderOde,
    Eigenvalue,
    Adjointness,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Determinant,
        Family::Corollary,
        Family::LeftRight,
        Family::Transfer,
        Family::Derivative,
        Family::StructureNumeric,
        Family::StructureResidue,
        Family::ZeroCurvature,
        Family::FirstOrderOde,
        Family::SecondOrderOde,
        Family::Eigenvalue,
        Family::Adjointness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Determinant => "det_y",
            Family::Corollary => "corollary",
            Family::LeftRight => "y_left_right",
            Family::Transfer => "transfer",
            Family::Derivative => "y_derivative",
            Family::StructureNumeric => "structure_numeric",
            Family::StructureResidue => "structure_residue",
            Family::ZeroCurvature => "zero_curvature",
            Family::FirstOrderOde => "ode_first_order",
            Family::SecondOrderOde => "ode_second_order",
            Family::Eigenvalue => "eigenvalue",
            Family::Adjointness => "adjointness",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Pinned tolerances.
pub mod tol {
    pub const DET: f64 = 1e-7;
    pub const COROLLARY: f64 = 1e-7;
    pub const LEFT_RIGHT: f64 = 1e-7;
    pub const TRANSFER: f64 = 1e-7;
    pub const DERIVATIVE: f64 = 1e-6;
    pub const STRUCTURE_NUMERIC: f64 = 1e-6;
    pub const STRUCTURE_RESIDUE: f64 = 1e-5;
    pub const ZERO_CURVATURE: f64 = 1e-8;
    pub const FIRST_ORDER: f64 = 1e-6;
    pub const SECOND_ORDER: f64 = 1e-5;
    pub const EIGEN: f64 = 1e-8;
    pub const SECOND_KIND_EIGEN: f64 = 1e-6;
    pub const ADJOINT: f64 = 1e-7;
}

/// `r e^{iθ}` for `r ∈ {0.5, 2, 8}`, `θ = kπ/4`, `k = 1..7`.
pub fn z_ring() -> Vec<C64> {
    let mut v = Vec::with_capacity(21);
    for r in [0.5, 2.0, 8.0] {
        for k in 1..=7 {
            v.push(C64::from_polar(r, k as f64 * PI / 4.0));
        }
    }
    v
}

/// Ten off-ray points for the finite-difference structure matrix.
pub fn structure_points() -> Vec<C64> {
    let mut v = Vec::with_capacity(10);
    for r in [0.5, 2.0] {
        for k in 1..=5 {
            v.push(C64::from_polar(r, k as f64 * PI / 4.0 + PI / 8.0));
        }
    }
    v
}

/// Step for difference quotients at `z`.
pub fn fd_step(z: C64) -> f64 {
    (3e-4f64).min(0.1 * matbiorth_biorth::distance_to_ray(z))
}

/// Inputs of a verification run.
pub struct SuiteInput<'a> {
    pub ev: &'a SecondKindEvaluator,
    /// Moments for the pairing checks.
    pub table: &'a MomentTable,
    /// `∫ x⁻¹ W`, when it exists.
    pub w_inv: Option<&'a Mat>,
    /// Degrees `1..=n_check` are checked.
    pub n_check: usize,
    pub families: &'a [Family],
}

fn has(families: &[Family], f: Family) -> bool {
    families.contains(&f)
}

fn point_frames(ev: &SecondKindEvaluator, points: &[C64]) -> Result<Vec<(FrameSet, FrameSet)>, RhpError> {
    par::map(points, |&z| Ok((FrameSet::at(ev, z, Side::Left)?, FrameSet::at(ev, z, Side::Right)?)))
        .into_iter()
        .collect()
}

/// Runs the selected families and returns one record per instance, in a
/// fixed order.
pub fn run_suite(input: &SuiteInput) -> Result<Vec<Record>, RhpError> {
    let ev = input.ev;
    let sys = ev.system();
    let pearson = ev.model().pearson_data();
    let fam = input.families;
    let n_top = input.n_check.min(sys.n_max);
    let mut out = Vec::new();

    let needs_ring = [
        Family::Determinant,
        Family::Corollary,
        Family::LeftRight,
        Family::Transfer,
        Family::FirstOrderOde,
        Family::SecondOrderOde,
        Family::Eigenvalue,
    ]
    .iter()
    .any(|&f| has(fam, f));
    let explicit: Vec<(StructureMatrix, StructureMatrix)> = (1..=n_top)
        .map(|n| Ok((structure_matrix_explicit(sys, pearson, n)?, structure_matrix_explicit_right(sys, pearson, n)?)))
        .collect::<Result<_, RhpError>>()?;

    let degree_one = check_degree_one(pearson).is_ok();
    let alphas = default_alphas(pearson);
    let mut eigen = Vec::new();
    if has(fam, Family::Eigenvalue) && degree_one {
        for n in 1..=n_top {
            {
                let e = eigenvalue_check(sys, pearson, n, Some(alphas.clone()), f64::INFINITY)?;
                out.push(Record::new("eigen_left", n, None, e.residual_l, tol::EIGEN));
                out.push(Record::new("eigen_right", n, None, e.residual_r, tol::EIGEN));
                out.push(Record::new("eigen_intertwining", n, None, e.intertwining, tol::EIGEN));
                eigen.push(e);
            }
        }
    }

    if needs_ring {
        let ring = z_ring();
        let frames = point_frames(ev, &ring)?;
        for (zi, (left, right)) in frames.iter().enumerate() {
            let z = Some(ring[zi]);
            for n in 1..=n_top {
                let (fl, fr) = (left.get(n)?, right.get(n)?);
                if has(fam, Family::Determinant) {
                    out.push(Record::new("det_y_left", n, z, det_residual(fl), tol::DET));
                    out.push(Record::new("det_y_right", n, z, det_residual(fr), tol::DET));
                }
                if has(fam, Family::Corollary) {
                    let [a, b, c] = corollary_identities(sys, fl, fr);
                    out.push(Record::new("corollary_1", n, z, a, tol::COROLLARY));
                    out.push(Record::new("corollary_2", n, z, b, tol::COROLLARY));
                    out.push(Record::new("corollary_3", n, z, c, tol::COROLLARY));
                }
                if has(fam, Family::LeftRight) {
                    out.push(Record::new("y_left_right", n, z, left_right_residual(fl, fr)?, tol::LEFT_RIGHT));
                }
                if has(fam, Family::Transfer) {
                    out.push(Record::new(
                        "transfer_left",
                        n,
                        z,
                        transfer_residual(sys, fl, left.get(n + 1)?)?,
                        tol::TRANSFER,
                    ));
                    out.push(Record::new(
                        "transfer_right",
                        n,
                        z,
                        transfer_residual(sys, fr, right.get(n + 1)?)?,
                        tol::TRANSFER,
                    ));
                }
                let (ml, mr) = &explicit[n - 1];
                if has(fam, Family::FirstOrderOde) {
                    out.push(Record::new(
                        "ode_first_order_left",
                        n,
                        z,
                        first_order_ode_residual(fl, pearson, ml),
                        tol::FIRST_ORDER,
                    ));
                    out.push(Record::new(
                        "ode_first_order_right",
                        n,
                        z,
                        first_order_ode_residual(fr, pearson, mr),
                        tol::FIRST_ORDER,
                    ));
                }
                if has(fam, Family::SecondOrderOde) {
                    out.push(Record::new(
                        "ode_second_order_left",
                        n,
                        z,
                        second_order_ode_residual(fl, pearson, ml)?,
                        tol::SECOND_ORDER,
                    ));
                    out.push(Record::new(
                        "ode_second_order_right",
                        n,
                        z,
                        second_order_ode_residual(fr, pearson, mr)?,
                        tol::SECOND_ORDER,
                    ));
                }
                if let Some(e) = eigen.get(n - 1) {
                    out.push(Record::new(
                        "second_kind_eigen_left",
                        n,
                        z,
                        second_kind_eigen_residual(fl, pearson, e, &alphas),
                        tol::SECOND_KIND_EIGEN,
                    ));
                    out.push(Record::new(
                        "second_kind_eigen_right",
                        n,
                        z,
                        second_kind_eigen_residual(fr, pearson, e, &alphas),
                        tol::SECOND_KIND_EIGEN,
                    ));
                }
            }
        }
    }

    if has(fam, Family::Derivative) || has(fam, Family::StructureNumeric) {
        let points = structure_points();
        let per_point: Vec<Result<Vec<Record>, RhpError>> = par::map(&points, |&z| {
            let mut recs = Vec::new();
            let h = fd_step(z);
            for side in [Side::Left, Side::Right] {
                let st = Stencil::at(ev, z, side, h)?;
                let left = side == Side::Left;
                for n in 1..=n_top {
                    if has(fam, Family::Derivative) {
                        let (r, _) = st.derivative_consistency(n)?;
                        let name = if left { "y_derivative_left" } else { "y_derivative_right" };
                        recs.push(Record::new(name, n, Some(z), r, tol::DERIVATIVE));
                    }
                    if has(fam, Family::StructureNumeric) {
                        let (ml, mr) = &explicit[n - 1];
                        let exact = if left { ml.eval(z) } else { mr.eval(z) };
                        let (num, _) = st.structure_matrix(n, pearson)?;
                        let r = num.dist(&exact) / exact.norm().max(1.0);
                        let name = if left { "structure_numeric_left" } else { "structure_numeric_right" };
                        recs.push(Record::new(name, n, Some(z), r, tol::STRUCTURE_NUMERIC.max(10.0 * h * h)));
                    }
                }
            }
            Ok(recs)
        });
        for r in per_point {
            out.extend(r?);
        }
    }

    if has(fam, Family::StructureResidue) {
        for r in [0.1, 0.05] {
            let circle = residue_circle(r);
            let frames = point_frames(ev, &circle)?;
            for n in 1..=n_top {
                let (ml, mr) = &explicit[n - 1];
                for (side, m, name) in
                    [(Side::Left, ml, "structure_residue_left"), (Side::Right, mr, "structure_residue_right")]
                {
                    let fs: Vec<Frame> = frames
                        .iter()
                        .map(|(l, rr)| Ok(if side == Side::Left { l.get(n)?.clone() } else { rr.get(n)?.clone() }))
                        .collect::<Result<_, RhpError>>()?;
                    let fit = residue_from_frames(&fs, pearson)?;
                    let exact = m.pole_residue();
                    let res = fit.dist(&exact) / exact.norm().max(1.0);
                    out.push(Record::new(name, n, Some(C64::new(r, 0.0)), res, tol::STRUCTURE_RESIDUE));
                }
            }
        }
    }

    if has(fam, Family::ZeroCurvature) {
        for n in 1..n_top.min(sys.n_max) {
            for (side, name) in [(Side::Left, "zero_curvature_left"), (Side::Right, "zero_curvature_right")] {
                out.push(Record::new(
                    name,
                    n,
                    None,
                    zero_curvature_residual(sys, pearson, n, side)?,
                    tol::ZERO_CURVATURE,
                ));
            }
        }
    }

    if has(fam, Family::Adjointness) && degree_one {
        let r = adjointness_check(pearson, input.table, input.w_inv, 3, 3)?;
        out.push(Record::new("adjointness", 3, None, r, tol::ADJOINT));
    }
    Ok(out)
}
