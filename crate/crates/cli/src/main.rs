//! `fockop`: exact Toeplitz/Hankel operator computations from the shell.

mod commands;
mod error;
mod report;
mod settings;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use error::CliError;
use report::Format;
use settings::Settings;

#[derive(Parser, Debug)]
#[command(name = "fockop", version, about = "Exact Toeplitz and Hankel operator products on Fock-Sobolev spaces")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format (norms defaults to csv, everything else to json)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file with [oracle] and [analysis] tables and a top-level `jobs`
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Monte Carlo seed (FOCKOP_SEED takes precedence)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo sample count
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    /// Relative tolerance of the adaptive quadrature
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads for sweeps and verification
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Print the elapsed wall time to stderr
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    /// Complex dimension
    #[arg(short = 'n', default_value_t = 1)]
    pub n: usize,
    /// Sobolev order
    #[arg(short = 'm', default_value_t = 0)]
    pub m: u32,
}

#[derive(Args, Debug, Clone)]
pub struct RayArgs {
    /// `ones`, or `custom "d1|d2|…"`
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "DIRECTION"])]
    pub ray: Option<Vec<String>>,
    /// Base multi-index of the ray, e.g. `2|0` (default: the symbols' offsets)
    #[arg(long)]
    pub base: Option<String>,
    /// `lo:hi:geometric` or `lo:hi:linear[:step]`
    #[arg(long = "t", default_value = "64:4096:geometric")]
    pub t: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a symbol or operator expression and print its canonical form
    Parse {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(short = 'f', conflicts_with = "op", required_unless_present = "op")]
        f: Option<String>,
        #[arg(long)]
        op: Option<String>,
    },
    /// Decide boundedness or compactness from the symbols
    Classify {
        kind: commands::ClassifyKind,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'g')]
        g: Option<String>,
        /// Also sweep norms along a ray and check them against the verdict
        #[arg(long)]
        corroborate: bool,
        #[command(flatten)]
        ray: RayArgs,
    },
    /// Apply an operator expression to a basis vector
    Apply {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        op: String,
        /// Multi-index, e.g. `3` or `1|2`
        #[arg(long)]
        alpha: String,
    },
    /// Exact squared norms of the images of e_α along a ray
    Norms {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        op: String,
        #[command(flatten)]
        ray: RayArgs,
    },
    /// Fit the amplitude exponent of a norm sweep (CSV from `norms`)
    Fit {
        /// CSV file with `t` and `squared_norm` columns; stdin when absent or `-`
        input: Option<PathBuf>,
        /// Predicted exponent `p/q` to compare against
        #[arg(long)]
        predicted: Option<String>,
    },
    /// Run an exact or numerical self-check
    Verify {
        #[command(subcommand)]
        check: commands::VerifyCheck,
    },
}

fn run(cli: Cli) -> Result<(report::Report, Format), CliError> {
    let settings = Settings::resolve(&cli.global)?;
    let (report, default_format) = match cli.command {
        Command::Parse { space, f, op } => (commands::parse(&space, f.as_deref(), op.as_deref())?, Format::Json),
        Command::Classify {
            kind,
            space,
            f,
            g,
            corroborate,
            ray,
        } => (
            commands::classify(kind, &space, &f, g.as_deref(), corroborate.then_some(&ray), &settings)?,
            Format::Json,
        ),
        Command::Apply { space, op, alpha } => (commands::apply(&space, &op, &alpha)?, Format::Json),
        Command::Norms { space, op, ray } => (commands::norms(&space, &op, &ray, &settings)?, Format::Csv),
        Command::Fit { input, predicted } => (commands::fit(input.as_deref(), predicted.as_deref(), &settings)?, Format::Json),
        Command::Verify { check } => (commands::verify(check, &settings)?, Format::Json),
    };
    Ok((report, cli.global.format.unwrap_or(default_format)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let timing = cli.global.timing;
    let start = Instant::now();
    let result = run(cli);
    if timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok((report, format)) => {
            let text = match report.render(format) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
