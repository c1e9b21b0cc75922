use std::collections::BTreeSet;
use std::path::Path;
use std::process::{Command, Output};

use matbiorth_cli::registry;
use serde_json::Value;
use tempfile::TempDir;

const NONCOMMUTING: &str =
    r#"{"kind": "freud_ray", "a": [[1, 1], [0, 0.5]], "b": [[0, 0], [0, 0]], "c": [[-1, -0.5], [0, -1]]}"#;
const DURAN_GRUNBAUM: &str = r#"{"kind": "duran_grunbaum", "a1": [[-0.5, 0.3], [0, -0.5]], "a2": [[-0.5, 0.3], [0, -0.5]], "alpha": [[0.5, 0.2], [0, 0.5]]}"#;

fn run(dir: &Path, cmd: &str, config: &str, extra: &[&str], env: &[(&str, &str)]) -> Output {
    let path = dir.join("config.json");
    std::fs::write(&path, config).unwrap();
    let mut c = Command::new(env!("CARGO_BIN_EXE_matbiorth"));
    c.arg(cmd).arg("--config").arg(&path).arg("--out").arg(dir.join("out")).args(extra);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("out").join(name)).unwrap()).unwrap()
}

fn read_csv(dir: &Path, name: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(dir.join("out").join(name)).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn record_names() -> BTreeSet<&'static str> {
    registry::CHECKS.iter().map(|c| c.name).collect()
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn moments_of_the_exponential_weight() {
    let dir = TempDir::new().unwrap();
    let o = run(
        dir.path(),
        "moments",
        r#"{"model": {"kind": "laguerre", "alpha": 0.0}, "n_max": 4, "moments": 10}"#,
        &[],
        &[],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(dir.path(), "moments.csv");
    assert_eq!(header[..3], ["n", "W[0][0].re", "W[0][0].im"]);
    assert_eq!(rows.len(), 11);
    let w4: f64 = rows[4][1].parse().unwrap();
    assert!((w4 - 24.0).abs() < 1e-10, "{w4}");
    let doc = read_json(dir.path(), "moments.json");
    assert_eq!(doc["quadrature"].as_array().unwrap().len(), 11);
    assert_eq!(doc["recurrence"].as_array().unwrap().len(), 11);
    assert!(doc["cross_check"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn missing_config_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_matbiorth"))
        .args(["moments", "--config"])
        .arg(dir.path().join("absent.json"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("absent.json"));
    let o = Command::new(env!("CARGO_BIN_EXE_matbiorth")).arg("moments").output().unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn invalid_configs_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    for cfg in [
        r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 3, "rel_tol": 1e-3}"#,
        r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 3, "checks": ["no_such_check"]}"#,
        r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 0}"#,
        r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 3, "precision": "quad"}"#,
        r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 3, "colour": "red"}"#,
    ] {
        assert_eq!(code(&run(dir.path(), "verify", cfg, &[], &[])), 1, "{cfg}");
    }
    let cfg = r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 2, "checks": ["det_y"]}"#;
    assert_eq!(code(&run(dir.path(), "verify", cfg, &[], &[("MATBIORTH_THREADS", "0")])), 1);
}

#[test]
fn extended_precision_agrees_with_double_within_err_est() {
    let cfg = r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 4}"#;
    let (d, e) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    assert_eq!(code(&run(d.path(), "moments", cfg, &[], &[])), 0);
    assert_eq!(code(&run(e.path(), "moments", cfg, &["--precision", "ext:30"], &[])), 0);
    let (a, b) = (read_json(d.path(), "moments.json"), read_json(e.path(), "moments.json"));
    assert_eq!(b["precision"], "ext:30");
    let (ra, rb, q) = (&a["recurrence"], &b["recurrence"], &a["quadrature"]);
    for n in 0..ra.as_array().unwrap().len() {
        let x = ra[n]["W"][0][0][0].as_f64().unwrap();
        let y = rb[n]["W"][0][0][0].as_f64().unwrap();
        let est = q[n]["err_est"].as_f64().unwrap();
        assert!((x - y).abs() <= est.max(1e-15 * x.abs()), "n {n}: {x} vs {y}, err_est {est}");
    }
}

#[test]
fn laguerre_full_suite_passes() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 5, "precision": "ext:30"}"#;
    let o = run(dir.path(), "verify", cfg, &[], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc = read_json(dir.path(), "verify.json");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["failures"], 0);
    let records = doc["records"].as_array().unwrap();
    assert!(records.iter().all(|r| r["pass"] == true));
    let names: BTreeSet<&str> = records.iter().map(|r| r["check"].as_str().unwrap()).collect();
    // every registered check runs on a degree-one scalar model
    assert_eq!(names, record_names());
    let ring = records.iter().filter(|r| r["check"] == "det_y_left" && r["n"] == 1).count();
    assert_eq!(ring, 21);
}

#[test]
fn corrupted_moments_fail_biorthogonality() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"model": {"kind": "laguerre", "alpha": 0.5}, "n_max": 4, "precision": "ext:30",
        "checks": ["biorthogonality"], "test_hook": {"corrupt_moment": {"index": 5, "relative": 1e-6}}}"#;
    let o = run(dir.path(), "verify", cfg, &[], &[]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("biorthogonality"), "{}", stderr(&o));
    let doc = read_json(dir.path(), "verify.json");
    assert_eq!(doc["passed"], false);
}

#[test]
fn check_filter_runs_one_family() {
    let dir = TempDir::new().unwrap();
    let cfg = format!(r#"{{"model": {DURAN_GRUNBAUM}, "n_max": 4, "checks": ["zero_curvature"]}}"#);
    let o = run(dir.path(), "verify", &cfg, &[], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let records = read_json(dir.path(), "verify.json")["records"].as_array().unwrap().clone();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["check"].as_str().unwrap().starts_with("zero_curvature")));
}

#[test]
fn dpiv_scalar_freud() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"model": {"kind": "freud_ray", "a": [[1]], "b": [[0]], "c": [[-2]]}, "n_max": 6, "precision": "ext:30", "rel_tol": 1e-7}"#;
    let o = run(dir.path(), "dpiv", cfg, &[], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (header, rows) = read_csv(dir.path(), "dpiv.csv");
    assert_eq!(header, ["n", "residual1_norm", "residual2_norm", "relative1", "relative2"]);
    assert_eq!(rows.len(), 6);
    for r in rows {
        assert!(r[3].parse::<f64>().unwrap() <= 1e-7 && r[4].parse::<f64>().unwrap() <= 1e-7);
    }
}

#[test]
fn dpiv_noncommuting_model() {
    let dir = TempDir::new().unwrap();
    let cfg = format!(r#"{{"model": {NONCOMMUTING}, "n_max": 4, "precision": "ext:30"}}"#);
    let o = run(dir.path(), "dpiv", &cfg, &[], &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (_, rows) = read_csv(dir.path(), "dpiv.csv");
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap() <= 1e-6 && r[4].parse::<f64>().unwrap() <= 1e-6));
}

#[test]
fn dpiv_refuses_degree_one_data() {
    let dir = TempDir::new().unwrap();
    let cfg = format!(r#"{{"model": {DURAN_GRUNBAUM}, "n_max": 4}}"#);
    let o = run(dir.path(), "dpiv", &cfg, &[], &[]);
    assert_eq!(code(&o), 5, "{}", stderr(&o));
    assert!(!dir.path().join("out").join("dpiv.csv").exists());
}

#[test]
fn ill_conditioned_moments_are_a_regularity_failure() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"model": {"kind": "laguerre", "alpha": 0.0}, "n_max": 4, "checks": ["biorthogonality"]}"#;
    let o = run(dir.path(), "verify", cfg, &["--nmax", "14"], &[]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn reports_are_deterministic() {
    let cfg = format!(
        r#"{{"model": {NONCOMMUTING}, "n_max": 3, "precision": "ext:30", "checks": ["det_y", "structure_residue", "biorthogonality"]}}"#
    );
    let dirs: Vec<TempDir> = (0..3).map(|_| TempDir::new().unwrap()).collect();
    assert_eq!(code(&run(dirs[0].path(), "verify", &cfg, &[], &[])), 0);
    assert_eq!(code(&run(dirs[1].path(), "verify", &cfg, &[], &[])), 0);
    assert_eq!(code(&run(dirs[2].path(), "verify", &cfg, &[], &[("MATBIORTH_THREADS", "1")])), 0);
    let docs: Vec<Value> = dirs.iter().map(|d| without_timestamp(read_json(d.path(), "verify.json"))).collect();
    assert_eq!(docs[0], docs[1]);
    assert_eq!(docs[0], docs[2]);
    // no temporary files are left next to the report
    let files: Vec<_> =
        std::fs::read_dir(dirs[0].path().join("out")).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files, ["verify.json"]);
}

#[test]
fn every_check_is_mapped() {
    let map = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../PAPER_MAP.md")).unwrap();
    let rows: BTreeSet<&str> =
        map.lines().filter_map(|l| l.strip_prefix("| `")).filter_map(|l| l.split('`').next()).collect();
    assert_eq!(rows, record_names());
    for c in registry::CHECKS {
        assert!(map.contains(c.identity), "{}", c.name);
    }
}
