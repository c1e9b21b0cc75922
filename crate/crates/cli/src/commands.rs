use std::path::PathBuf;

use matbiorth_biorth::{build_biorth, build_report, required_moments, BiorthSystem, BuildReport, SecondKindEvaluator};
use matbiorth_linalg::{Cdd, Mat, Precision, Scalar, C64};
use matbiorth_moments::{
    block_moment_matrix, cross_check, inverse_moment, moments_by_quadrature, moments_by_recurrence, CrossCheck,
    MomentError, MomentTable, QuadConfig, REGULARITY_BUDGET,
};
use matbiorth_painleve::{dpiv_table, DPIVData, DpivRow};
use matbiorth_rhp::{run_suite, NTransform, Record, SuiteInput};
use matbiorth_weights::WeightModel;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{CorruptMoment, RunConfig};
use crate::error::CliError;
use crate::output::{csv_bytes, num, timestamp, write_atomic};
use crate::registry::{self, BIORTHOGONALITY, MOMENT_CROSS_ORACLE};

/// Relative tolerance of every moment quadrature.
pub const QUAD_TOL: f64 = 1e-13;

/// Outcome of a command that ran to completion.
#[derive(Debug)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    /// First failing record, if any.
    pub failure: Option<String>,
}

impl Outcome {
    pub fn into_result(self) -> Result<Vec<PathBuf>, CliError> {
        match self.failure {
            None => Ok(self.files),
            Some(f) => Err(CliError::Verification(f)),
        }
    }
}

fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

fn matrix(m: &Mat) -> Value {
    let n = m.dim();
    Value::Array((0..n).map(|i| Value::Array((0..n).map(|j| complex(m[(i, j)])).collect())).collect())
}

/// Moments built in the working precision from quadrature seeds.
struct Tables {
    quadrature: MomentTable,
    recurrence: MomentTable,
    cross: Vec<CrossCheck>,
}

fn recurrence_in<T: Scalar>(
    model: &WeightModel,
    quadrature: &MomentTable,
    top: usize,
) -> Result<MomentTable<T>, CliError> {
    let d = model.pearson_data().degree();
    if quadrature.len() < d {
        return Err(MomentError::TableTooShort { need: d, have: quadrature.len() }.into());
    }
    Ok(moments_by_recurrence(model.pearson_data(), &quadrature.truncated(d).cast::<T>(), top)?)
}

fn tables(cfg: &RunConfig, top: usize) -> Result<Tables, CliError> {
    let top = top.max(cfg.model.pearson_data().degree());
    let quadrature = moments_by_quadrature(&cfg.model, top, QUAD_TOL)?;
    let recurrence = match cfg.precision {
        Precision::Double => recurrence_in::<C64>(&cfg.model, &quadrature, top)?,
        Precision::DoubleDouble => recurrence_in::<Cdd>(&cfg.model, &quadrature, top)?.to_c64(),
    };
    let cross = cross_check(&quadrature, &recurrence);
    Ok(Tables { quadrature, recurrence, cross })
}

/// Largest Hankel degree whose regularity the table can show.
fn check_regularity(table: &MomentTable) -> Result<(), CliError> {
    let top = (table.len() - 1) / 2;
    for n in 0..=top {
        let h = block_moment_matrix(table, n)?;
        let limit = REGULARITY_BUDGET / f64::EPSILON;
        if h.cond > limit || !h.cond.is_finite() {
            return Err(MomentError::RegularityFailure { n, cond: h.cond, limit }.into());
        }
    }
    Ok(())
}

pub fn cmd_moments(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let top = cfg.moments.unwrap_or(required_moments(cfg.n_max) - 1);
    let t = tables(cfg, top)?;
    check_regularity(&t.recurrence)?;
    let mut header = t.quadrature.csv_header();
    header.extend(["err_est", "recurrence_delta", "cross_tolerance", "cross_pass"].map(String::from));
    let rows: Vec<Vec<String>> = t
        .quadrature
        .csv_rows()
        .into_iter()
        .zip(&t.cross)
        .map(|((n, vals), c)| {
            let mut r = vec![n.to_string()];
            r.extend(vals.iter().map(|v| num(*v)));
            r.extend([num(t.quadrature.err_est[n]), num(c.delta), num(c.tolerance), c.pass.to_string()]);
            r
        })
        .collect();
    let table_json = |tab: &MomentTable| -> Value {
        Value::Array(
            tab.moments
                .iter()
                .enumerate()
                .map(|(n, m)| json!({"n": n, "W": matrix(m), "err_est": tab.err_est[n], "source": tab.source[n].as_str()}))
                .collect(),
        )
    };
    let doc = json!({
        "command": "moments",
        "timestamp": timestamp(),
        "precision": cfg.precision_label,
        "dim": cfg.model.dim(),
        "quadrature": table_json(&t.quadrature),
        "recurrence": table_json(&t.recurrence),
        "cross_check": t.cross.iter().map(|c| json!({"n": c.n, "delta": c.delta, "tolerance": c.tolerance, "pass": c.pass})).collect::<Vec<_>>(),
    });
    let dir = &cfg.output_dir;
    write_atomic(dir, "moments.csv", &csv_bytes(&header, &rows)?)?;
    write_atomic(dir, "moments.json", &pretty(&doc)?)?;
    let failure = t
        .cross
        .iter()
        .find(|c| !c.pass)
        .map(|c| format!("{MOMENT_CROSS_ORACLE} n={} delta={:e} tolerance={:e}", c.n, c.delta, c.tolerance));
    Ok(Outcome { files: vec![dir.join("moments.csv"), dir.join("moments.json")], failure })
}

fn pretty(v: &Value) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_vec_pretty(v).map_err(|e| CliError::Usage(format!("json: {e}")))?;
    s.push(b'\n');
    Ok(s)
}

fn corrupt<T: Scalar>(table: &MomentTable<T>, hook: &CorruptMoment) -> Result<MomentTable<T>, CliError> {
    if hook.index >= table.len() {
        return Err(CliError::Usage(format!("corrupt_moment index {} beyond the table", hook.index)));
    }
    let mut t = table.clone();
    t.moments[hook.index] = t.moments[hook.index].scale(T::from_f64(1.0 + hook.relative));
    Ok(t)
}

fn build_in<T: Scalar>(
    cfg: &RunConfig,
    quadrature: &MomentTable,
    top: usize,
    n_sys: usize,
) -> Result<(BiorthSystem, BuildReport), CliError> {
    let clean = recurrence_in::<T>(&cfg.model, quadrature, top)?;
    let hook = cfg.test_hook.as_ref().and_then(|h| h.corrupt_moment.as_ref());
    let used = match hook {
        Some(h) => corrupt(&clean, h)?,
        None => clean.clone(),
    };
    let sys = build_biorth(&used, n_sys)?;
    // judged against the uncorrupted moments
    let report = build_report(&sys, &clean);
    Ok((sys.to_c64(), report))
}

/// Biorthogonal system of degree `n_sys` in the configured precision.
fn build_system(cfg: &RunConfig, n_sys: usize) -> Result<(MomentTable, BiorthSystem, BuildReport), CliError> {
    let top = required_moments(n_sys) - 1;
    let quadrature = moments_by_quadrature(&cfg.model, top, QUAD_TOL)?;
    let (sys, report) = match cfg.precision {
        Precision::Double => build_in::<C64>(cfg, &quadrature, top, n_sys)?,
        Precision::DoubleDouble => build_in::<Cdd>(cfg, &quadrature, top, n_sys)?,
    };
    Ok((quadrature, sys, report))
}

/// Tolerance on the biorthogonality record, relative to `‖Cₙ⁻¹‖`.
pub const BIORTH_TOL: f64 = 1e-9;

#[derive(Serialize)]
struct JsonRecord {
    check: &'static str,
    n: usize,
    z: Option<[f64; 2]>,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

impl From<&Record> for JsonRecord {
    fn from(r: &Record) -> Self {
        JsonRecord {
            check: r.check,
            n: r.n,
            z: r.z.map(|z| [z.re, z.im]),
            residual: r.residual,
            tolerance: r.tolerance,
            pass: r.pass,
        }
    }
}

/// Every record of a verification run, in a fixed order.
pub fn verification_records(cfg: &RunConfig) -> Result<Vec<Record>, CliError> {
    // zero curvature and transfer at degree n need degree n + 1
    let n_sys = cfg.n_max + 1;
    let (quadrature, sys, report) = build_system(cfg, n_sys)?;
    let mut records = Vec::new();
    if registry::selected(&cfg.checks, MOMENT_CROSS_ORACLE) {
        let t = tables(cfg, required_moments(n_sys) - 1)?;
        for c in &t.cross {
            records.push(Record::new(MOMENT_CROSS_ORACLE, c.n, None, c.delta, c.tolerance));
        }
    }
    if registry::selected(&cfg.checks, BIORTHOGONALITY) {
        for n in 0..=cfg.n_max {
            let off = report
                .off_diagonal
                .iter()
                .filter(|(a, b, _)| (*a == n || *b == n) && *a <= cfg.n_max && *b <= cfg.n_max)
                .map(|t| t.2)
                .fold(report.diagonal[n], f64::max);
            records.push(Record::new(BIORTHOGONALITY, n, None, off, BIORTH_TOL));
        }
    }
    let families = registry::suite_families(&cfg.checks);
    if !families.is_empty() {
        let pearson = cfg.model.pearson_data();
        let needs_inverse = NTransform::of(&pearson.h_l).has_pole() || NTransform::of(&pearson.h_r).has_pole();
        let w_inv = if needs_inverse { inverse_moment(&cfg.model, QUAD_TOL).ok().map(|w| w.0) } else { None };
        let ev = SecondKindEvaluator::new(sys, cfg.model.clone(), QuadConfig::default());
        let input =
            SuiteInput { ev: &ev, table: &quadrature, w_inv: w_inv.as_ref(), n_check: cfg.n_max, families: &families };
        records.extend(run_suite(&input)?);
    }
    Ok(records)
}

fn describe(r: &Record) -> String {
    let z = r.z.map_or(String::new(), |z| format!(" z={}{:+}i", z.re, z.im));
    format!("{} n={}{} residual={:e} tolerance={:e}", r.check, r.n, z, r.residual, r.tolerance)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let records = verification_records(cfg)?;
    let json_records: Vec<JsonRecord> = records.iter().map(JsonRecord::from).collect();
    let failures = records.iter().filter(|r| !r.pass).count();
    let doc = json!({
        "command": "verify",
        "timestamp": timestamp(),
        "precision": cfg.precision_label,
        "n_max": cfg.n_max,
        "passed": failures == 0,
        "failures": failures,
        "records": json_records,
    });
    let path = cfg.output_dir.join("verify.json");
    write_atomic(&cfg.output_dir, "verify.json", &pretty(&doc)?)?;
    Ok(Outcome { files: vec![path], failure: records.iter().find(|r| !r.pass).map(describe) })
}

/// Recursion data for the dPIV residuals; refuses anything but one-sided
/// degree-two Pearson data.
pub fn dpiv_data(cfg: &RunConfig, n_sys: usize) -> Result<DPIVData, CliError> {
    let p = cfg.model.pearson_data();
    if p.h_r.degree() != 0 || !p.h_r.coeff(0).is_zero() {
        return Err(CliError::Shape("dpiv needs one-sided Pearson data (h_r = 0)".into()));
    }
    if p.h_l.degree() != 2 {
        return Err(CliError::Shape(format!("dpiv needs Pearson data of degree 2, got degree {}", p.h_l.degree())));
    }
    let (_, sys, _) = build_system(cfg, n_sys)?;
    Ok(DPIVData::from_system(&p.h_l, &sys)?)
}

pub fn dpiv_rows(cfg: &RunConfig) -> Result<Vec<DpivRow>, CliError> {
    let data = dpiv_data(cfg, cfg.n_max + 1)?;
    Ok(dpiv_table(&data, cfg.n_max)?)
}

pub fn cmd_dpiv(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rows = dpiv_rows(cfg)?;
    let header: Vec<String> =
        ["n", "residual1_norm", "residual2_norm", "relative1", "relative2"].map(String::from).to_vec();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![r.n.to_string(), num(r.residual1_norm), num(r.residual2_norm), num(r.relative1), num(r.relative2)]
        })
        .collect();
    write_atomic(&cfg.output_dir, "dpiv.csv", &csv_bytes(&header, &body)?)?;
    let failure = rows.iter().find(|r| !(r.relative1 <= cfg.rel_tol && r.relative2 <= cfg.rel_tol)).map(|r| {
        format!("dpiv n={} relative1={:e} relative2={:e} tolerance={:e}", r.n, r.relative1, r.relative2, cfg.rel_tol)
    });
    Ok(Outcome { files: vec![cfg.output_dir.join("dpiv.csv")], failure })
}
