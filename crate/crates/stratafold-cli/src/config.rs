//! Flag parsing and the flag-over-file precedence rule. Every subcommand
//! takes the same flag set; a JSON config file supplies whatever the flags
//! leave unset.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::report::OutputFormat;

#[derive(Parser)]
#[command(
    name = "stratafold",
    version,
    about = "Trajectories, spectra, and invariant checks for stratified state-space geometry"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Integrate a dissipative generator and tabulate the trajectory
    Lindblad(RunArgs),
    /// Tabulate the lattice Dirac spectrum against the dispersion law
    DecSpectrum(RunArgs),
    /// Run the operator-identity suites and report pass/fail per invariant
    AlgebraCheck(RunArgs),
    /// Tabulate simplex points, their sphere embedding, and the metric residual
    Fisher(RunArgs),
}

#[derive(Args)]
pub struct RunArgs {
    /// JSON config file; explicit flags override values found in the file
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Write output here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Integration horizon
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,

    /// Integration step
    #[arg(long)]
    pub dt: Option<f64>,

    /// Ring site count (>= 3), or simplex outcome count for fisher
    #[arg(long)]
    pub sites: Option<usize>,

    /// Uniform ring edge length
    #[arg(long)]
    pub spacing: Option<f64>,

    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    /// Seed for the randomized sweeps and sampled tables
    #[arg(long)]
    pub seed: Option<u64>,
}

/// What a run produced: rendered output plus, for check suites, a verdict
/// that turns into the exit code after the output is written.
pub struct Outcome {
    pub text: String,
    pub failed_invariants: usize,
}

#[derive(Debug)]
pub enum Failure {
    /// unusable input: exit 2
    Config(String),
    /// the computation itself broke a numerical contract: exit 3
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Numerical(m) => m,
        }
    }
}

/// Errors surfacing through the library API keep their role: state and
/// positivity contract breaks are runtime violations, everything else at
/// this level means the user handed us something unusable.
pub fn classify(e: stratafold::Error) -> Failure {
    use stratafold::Error as E;
    match e {
        E::NotAState(_)
        | E::PositivityViolation { .. }
        | E::StratumBoundary(_)
        | E::OutsideDomain
        | E::NotHermitian { .. }
        | E::NotUnitary { .. } => Failure::Numerical(e.to_string()),
        _ => Failure::Config(e.to_string()),
    }
}

pub fn config_error(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

pub fn read_config_text(args: &RunArgs) -> Result<Option<String>, Failure> {
    match &args.config {
        None => Ok(None),
        Some(path) => std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| config_error(format!("cannot read {}: {e}", path.display()))),
    }
}
