use matbiorth_linalg::{Cdd, Precision, Scalar, C64};
use matbiorth_moments::{moments_by_quadrature, moments_by_recurrence, MomentTable};
use matbiorth_weights::WeightModel;

use crate::error::BiorthError;
use crate::system::{build_biorth, required_moments, BiorthSystem};

/// Everything downstream checks need from one weight.
#[derive(Clone, Debug)]
pub struct Built {
    pub model: WeightModel,
    pub precision: Precision,
    /// Moments by quadrature, `0..required_moments(n_max)`.
    pub quadrature: MomentTable,
    /// Moments by the Pearson recurrence from quadrature seeds, rounded to
    /// double.
    pub recurrence: MomentTable,
    pub sys: BiorthSystem,
    /// Checks evaluated in the working precision before rounding to double.
    pub report: BuildReport,
}

/// Internal consistency of a built system, all relative.
#[derive(Clone, Debug, Default)]
pub struct BuildReport {
    /// `(n, m, ‖⟨P_nᴸ, P_mᴿ⟩‖ / ‖C_n⁻¹‖)` for `n ≠ m`.
    pub off_diagonal: Vec<(usize, usize, f64)>,
    /// `‖⟨P_nᴸ, P_nᴿ⟩ − C_n⁻¹‖ / ‖C_n⁻¹‖`.
    pub diagonal: Vec<f64>,
    /// `‖⟨P_nᴸ, zⁿ⟩ − ⟨zⁿ, P_nᴿ⟩‖ / ‖C_n⁻¹‖`.
    pub normalization: Vec<f64>,
    pub recurrence_left: Vec<f64>,
    pub recurrence_right: Vec<f64>,
}

/// Consistency checks of `sys` against the moments it was built from.
pub fn build_report<T: Scalar>(sys: &BiorthSystem<T>, table: &MomentTable<T>) -> BuildReport {
    let g = sys.biorthogonality_matrix(table, sys.n_max);
    let mut r = BuildReport::default();
    for n in 0..=sys.n_max {
        let scale = sys.c_inv[n].norm();
        for m in 0..=sys.n_max {
            if n == m {
                r.diagonal.push((&g[n][n] - &sys.c_inv[n]).norm() / scale);
            } else {
                r.off_diagonal.push((n, m, g[n][m].norm() / scale));
            }
        }
        r.normalization.push((sys.right_normalization(table, n) - &sys.c_inv[n]).norm() / scale);
        r.recurrence_left.push(sys.recurrence_residual_left(n));
        r.recurrence_right.push(sys.recurrence_residual_right(n));
    }
    r
}

fn build_in<T: Scalar>(
    model: &WeightModel,
    quadrature: &MomentTable,
    len: usize,
    n_max: usize,
) -> Result<(MomentTable<T>, BiorthSystem<C64>, BuildReport), BiorthError> {
    let d = model.pearson_data().degree();
    let seed = quadrature.truncated(d).cast::<T>();
    let table = moments_by_recurrence(model.pearson_data(), &seed, len - 1)?;
    let sys = build_biorth(&table, n_max)?;
    let report = build_report(&sys, &table);
    Ok((table, sys.to_c64(), report))
}

/// Quadrature seeds, recurrence moments in the requested precision, then the
/// biorthogonal system.
pub fn build_from_model(
    model: &WeightModel,
    n_max: usize,
    precision: Precision,
    rel_tol: f64,
) -> Result<Built, BiorthError> {
    let len = required_moments(n_max);
    let quadrature = moments_by_quadrature(model, len - 1, rel_tol)?;
    let (recurrence, sys, report) = match precision {
        Precision::Double => build_in::<C64>(model, &quadrature, len, n_max)?,
        Precision::DoubleDouble => {
            let (t, s, r) = build_in::<Cdd>(model, &quadrature, len, n_max)?;
            (t.to_c64(), s, r)
        }
    };
    Ok(Built { model: model.clone(), precision, quadrature, recurrence, sys, report })
}
