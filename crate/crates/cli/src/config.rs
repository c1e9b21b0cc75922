use std::path::{Path, PathBuf};

use matbiorth_linalg::{c64, Mat, MatPoly, Precision};
use matbiorth_weights::model::DEFAULT_FROBENIUS_TERMS;
use matbiorth_weights::{PearsonData, WeightModel};
use serde::Deserialize;

use crate::error::CliError;
use crate::registry;

/// Matrix entries are `[re, im]` pairs; a bare number is read as real.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Complex([f64; 2]),
    Real(f64),
}

pub type MatSpec = Vec<Vec<Entry>>;

fn to_mat(rows: &MatSpec, what: &str) -> Result<Mat, CliError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Usage(format!("{what} must be a nonempty square array of rows")));
    }
    Ok(Mat::from_fn(n, |i, j| match rows[i][j] {
        Entry::Complex([re, im]) => c64(re, im),
        Entry::Real(re) => c64(re, 0.0),
    }))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    /// Scalar `x^α e^{−x}`.
    Laguerre { alpha: f64 },
    /// `e^{A1 x} x^α e^{A2 x}`.
    DuranGrunbaum { a1: MatSpec, a2: MatSpec, alpha: MatSpec },
    /// `x^A e^{Bx + Cx²/2}`, one-sided Pearson data `A + Bz + Cz²`.
    FreudRay { a: MatSpec, b: MatSpec, c: MatSpec },
    /// General Pearson data, coefficients in increasing degree.
    Pearson {
        h_l: Vec<MatSpec>,
        h_r: Vec<MatSpec>,
        #[serde(default)]
        w0_l: Option<MatSpec>,
        #[serde(default)]
        w0_r: Option<MatSpec>,
        #[serde(default)]
        k_terms: Option<usize>,
    },
}

impl ModelSpec {
    pub fn build(&self) -> Result<WeightModel, CliError> {
        let poly = |cs: &[MatSpec], what: &str| -> Result<MatPoly, CliError> {
            if cs.is_empty() {
                return Err(CliError::Usage(format!("{what} needs at least one coefficient")));
            }
            let mats = cs.iter().map(|c| to_mat(c, what)).collect::<Result<Vec<_>, _>>()?;
            if mats.iter().any(|m| m.dim() != mats[0].dim()) {
                return Err(CliError::Usage(format!("{what} coefficients differ in size")));
            }
            Ok(MatPoly::new(mats))
        };
        let model = match self {
            ModelSpec::Laguerre { alpha } => {
                let half = Mat::real_diag(&[-0.5]);
                WeightModel::duran_grunbaum(half.clone(), half, Mat::real_diag(&[*alpha]))
            }
            ModelSpec::DuranGrunbaum { a1, a2, alpha } => {
                WeightModel::duran_grunbaum(to_mat(a1, "a1")?, to_mat(a2, "a2")?, to_mat(alpha, "alpha")?)
            }
            ModelSpec::FreudRay { a, b, c } => {
                WeightModel::freud_ray(to_mat(a, "a")?, to_mat(b, "b")?, to_mat(c, "c")?)
            }
            ModelSpec::Pearson { h_l, h_r, w0_l, w0_r, k_terms } => {
                let h_l = poly(h_l, "h_l")?;
                let h_r = poly(h_r, "h_r")?;
                let n = h_l.dim();
                let seed = |s: &Option<MatSpec>, what| s.as_ref().map_or(Ok(Mat::identity(n)), |m| to_mat(m, what));
                let data = PearsonData::new(h_l, h_r, seed(w0_l, "w0_l")?, seed(w0_r, "w0_r")?)
                    .map_err(|e| CliError::Usage(format!("invalid model: {e}")))?;
                WeightModel::pearson(data, k_terms.unwrap_or(DEFAULT_FROBENIUS_TERMS), true)
            }
        };
        model.map_err(|e| CliError::Usage(format!("invalid model: {e}")))
    }
}

/// `double` or `ext:<digits>`.
pub fn parse_precision(s: &str) -> Result<Precision, CliError> {
    if s == "double" {
        return Ok(Precision::Double);
    }
    let digits = s
        .strip_prefix("ext:")
        .and_then(|d| d.parse::<u32>().ok())
        .ok_or_else(|| CliError::Usage(format!("precision must be `double` or `ext:<digits>`, got `{s}`")))?;
    Precision::from_digits(digits)
        .ok_or_else(|| CliError::Usage(format!("at most 31 digits are supported, got {digits}")))
}

/// Fixed failure hooks for negative-control runs.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestHook {
    /// Multiplies every entry of the moment with this index by
    /// `1 + relative` before the biorthogonal build.
    pub corrupt_moment: Option<CorruptMoment>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorruptMoment {
    pub index: usize,
    pub relative: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: ModelSpec,
    n_max: usize,
    #[serde(default)]
    precision: Option<String>,
    #[serde(default)]
    rel_tol: Option<f64>,
    #[serde(default)]
    checks: Vec<String>,
    #[serde(default)]
    output_dir: Option<PathBuf>,
    /// Highest moment index written by `moments`.
    #[serde(default)]
    moments: Option<usize>,
    #[serde(default)]
    test_hook: Option<TestHook>,
}

pub const DEFAULT_REL_TOL: f64 = 1e-6;

/// A validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model_spec: ModelSpec,
    pub model: WeightModel,
    pub n_max: usize,
    pub precision: Precision,
    pub precision_label: String,
    pub rel_tol: f64,
    pub checks: Vec<String>,
    pub output_dir: PathBuf,
    pub moments: Option<usize>,
    pub test_hook: Option<TestHook>,
}

/// Command line overrides applied on top of the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub precision: Option<String>,
    pub n_max: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path, ov: &Overrides) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, ov)
    }

    pub fn parse(text: &str, ov: &Overrides) -> Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))?;
        let n_max = ov.n_max.unwrap_or(raw.n_max);
        if n_max < 1 {
            return Err(CliError::Usage("n_max must be at least 1".into()));
        }
        let rel_tol = raw.rel_tol.unwrap_or(DEFAULT_REL_TOL);
        if !(rel_tol > 0.0 && rel_tol <= 1e-4) {
            return Err(CliError::Usage(format!("rel_tol must lie in (0, 1e-4], got {rel_tol}")));
        }
        for c in &raw.checks {
            if registry::lookup(c).is_none() {
                return Err(CliError::Usage(format!("unknown check `{c}`; known: {}", registry::names().join(", "))));
            }
        }
        let label = ov.precision.clone().or(raw.precision).unwrap_or_else(|| "double".into());
        let precision = parse_precision(&label)?;
        Ok(RunConfig {
            model: raw.model.build()?,
            model_spec: raw.model,
            n_max,
            precision,
            precision_label: label,
            rel_tol,
            checks: raw.checks,
            output_dir: ov.out.clone().or(raw.output_dir).unwrap_or_else(|| PathBuf::from(".")),
            moments: raw.moments,
            test_hook: raw.test_hook,
        })
    }
}
