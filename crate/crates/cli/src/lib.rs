//! Driver for the moment, verification and dPIV pipelines: JSON config in,
//! CSV and JSON reports out, with a fixed exit-code contract.

pub mod commands;
pub mod config;
mod error;
pub mod output;
pub mod registry;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_dpiv, cmd_moments, cmd_verify, verification_records, Outcome};
pub use config::{Overrides, RunConfig};
pub use error::CliError;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "MATBIORTH_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "matbiorth",
    version,
    about = "Matrix biorthogonal polynomials on the ray: moments, identity checks, dPIV residuals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write moments.csv and moments.json.
    Moments(CommonArgs),
    /// Run the identity checks and write verify.json.
    Verify(CommonArgs),
    /// Write dpiv.csv for one-sided degree-two Pearson data.
    Dpiv(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory, overriding the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `double` or `ext:<digits>`.
    #[arg(long)]
    pub precision: Option<String>,
    #[arg(long = "nmax")]
    pub n_max: Option<usize>,
}

impl CommonArgs {
    pub fn load(&self) -> Result<RunConfig, CliError> {
        let ov = Overrides { out: self.out.clone(), precision: self.precision.clone(), n_max: self.n_max };
        RunConfig::load(&self.config, &ov)
    }
}

/// Thread count from [`THREADS_ENV`], if set.
pub fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{s}`"))),
        },
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let work = || match &cli.command {
        Command::Moments(a) => cmd_moments(&a.load()?),
        Command::Verify(a) => cmd_verify(&a.load()?),
        Command::Dpiv(a) => cmd_dpiv(&a.load()?),
    };
    let cap = thread_cap()?;
    #[cfg(feature = "parallel")]
    if let Some(n) = cap {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        return pool.install(work);
    }
    // without the parallel feature everything already runs on one thread
    let _ = cap;
    work()
}
