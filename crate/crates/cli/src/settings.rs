//! Effective configuration: config file, then flags, then environment.

use std::path::Path;

use fockop_core::analysis::AnalysisConfig;
use fockop_core::oracle::OracleConfig;
use serde::Deserialize;

use crate::error::CliError;
use crate::GlobalArgs;

pub const SEED_ENV: &str = "FOCKOP_SEED";

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    jobs: Option<usize>,
    oracle: OracleConfig,
    analysis: AnalysisConfig,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub oracle: OracleConfig,
    pub analysis: AnalysisConfig,
    pub jobs: Option<usize>,
}

impl Settings {
    pub fn resolve(args: &GlobalArgs) -> Result<Settings, CliError> {
        let file = match &args.config {
            Some(path) => read_config(path)?,
            None => FileConfig::default(),
        };
        let mut oracle = file.oracle;
        if let Some(seed) = args.seed {
            oracle.seed = seed;
        }
        if let Some(samples) = args.samples {
            oracle.samples = samples;
        }
        if let Some(tol) = args.tol {
            oracle.quad_tol = tol;
        }
        if let Ok(raw) = std::env::var(SEED_ENV) {
            oracle.seed = raw
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("{SEED_ENV}={raw:?} is not an unsigned integer")))?;
        }
        if oracle.samples < 2 {
            return Err(CliError::input("--samples must be at least 2"));
        }
        if !(oracle.quad_tol > 0.0 && oracle.quad_tol < 1.0) {
            return Err(CliError::input("--tol must lie in (0, 1)"));
        }
        let jobs = args.jobs.or(file.jobs);
        if jobs == Some(0) {
            return Err(CliError::input("--jobs must be at least 1"));
        }
        Ok(Settings {
            oracle,
            analysis: file.analysis,
            jobs,
        })
    }

    /// Runs `work` on a pool of `jobs` threads, or on the global pool.
    pub fn install<T: Send>(&self, work: impl FnOnce() -> T + Send) -> Result<T, CliError> {
        match self.jobs {
            None => Ok(work()),
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map(|pool| pool.install(work))
                .map_err(|e| CliError::internal(format!("cannot start {j} workers: {e}"))),
        }
    }
}

fn read_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::input(format!("config {}: {e}", path.display())))
}
