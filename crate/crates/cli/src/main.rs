//! `mixedvol`: compute mixed measures from JSON files and run verification suites.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage or parse
//! error, 3 math-domain error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mixedvol", version, about = "Mixed area and Monge-Ampere measures of polytopes and PL convex functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for Monte Carlo estimators and random suites.
    #[arg(long, global = true, default_value_t = mixedvol::integral::DEFAULT_SEED)]
    pub seed: u64,
    /// Monte Carlo sample size; defaults to the value of the command or suite.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Worker threads for estimators; results do not depend on it.
    #[arg(long, global = true, env = "MIXEDVOL_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Overrides the geometric tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Expected ambient dimension of the inputs, or the dimension a suite runs in.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Machine-readable output where text is the default.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Computes an object from input files and prints it as JSON.
    Compute(ComputeArgs),
    /// Runs a named verification suite and prints its report.
    Verify {
        /// Suite id, one of the acceptance criteria.
        suite: String,
    },
    /// Runs the built-in closed-form checks.
    Selftest,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    pub object: Object,
    /// Input files: polytopes or PL functions depending on the object.
    #[arg(required = true)]
    pub files: Vec<std::path::PathBuf>,
    /// Index `j` for intrinsic and functional-intrinsic.
    #[arg(long)]
    pub index: Option<usize>,
    /// Ball approximant refinement for intrinsic; defaults by dimension.
    #[arg(long)]
    pub refinement: Option<usize>,
    /// Support radius of the hat density for functional-intrinsic.
    #[arg(long, default_value_t = 2.0)]
    pub radius: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Object {
    MixedVolume,
    SurfaceMeasure,
    MixedAreaMeasure,
    Ma,
    MixedMa,
    ConjMa,
    Legendre,
    Intrinsic,
    FunctionalIntrinsic,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(tol) = cli.common.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            eprintln!("error: --tol must be positive and finite");
            return ExitCode::from(commands::EXIT_USAGE);
        }
        mixedvol::tolerance::set_geom_eps(tol);
    }
    if cli.common.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(commands::EXIT_USAGE);
    }
    let outcome = match &cli.command {
        Command::Compute(args) => commands::compute(args, &cli.common),
        Command::Verify { suite } => commands::verify(suite, &cli.common),
        Command::Selftest => Ok(commands::selftest(&cli.common)),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
