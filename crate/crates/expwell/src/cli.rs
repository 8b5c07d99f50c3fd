//! Command-line grammar.

use crate::checks::Suite;
use crate::error::CliError;
use crate::report::Format;
use clap::{Args, Parser, Subcommand, ValueEnum};
use expwell_core::solver::Coupling;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "expwell",
    version,
    about = "Bound states of the exponential well V(x) = -g^2 exp(-|x|)",
    after_help = "Exit codes: 0 ok, 1 self-check failed, 2 domain error, 3 outside the supported envelope, 4 I/O error.\n\
                  EXPWELL_THREADS caps the number of worker threads used by sweeps."
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Solve for one bound state.
    Solve(SolveArgs),
    /// Solve for all bound states up to a quantum number.
    Spectrum(SpectrumArgs),
    /// Harmonic-oscillator upper bound on a level.
    Hobound(HoboundArgs),
    /// Write figure data as CSV.
    Figdata(FigdataArgs),
    /// Finite-difference reference spectrum.
    Oracle(OracleArgs),
    /// Run the built-in identity and invariant suites.
    Selfcheck(SelfcheckArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Spectrum(_) => "spectrum",
            Command::Hobound(_) => "hobound",
            Command::Figdata(_) => "figdata",
            Command::Oracle(_) => "oracle",
            Command::Selfcheck(_) => "selfcheck",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct CouplingArgs {
    /// Well strength g, 0 < g <= 20.
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Well depth g^2 instead of g.
    #[arg(long = "g-squared", allow_negative_numbers = true)]
    pub g_squared: Option<f64>,
}

impl CouplingArgs {
    pub fn coupling(&self) -> Result<Coupling, CliError> {
        coupling_from(self.g, self.g_squared)
    }
}

fn coupling_from(g: Option<f64>, g2: Option<f64>) -> Result<Coupling, CliError> {
    match (g, g2) {
        (Some(g), _) => Coupling::new(g).map_err(CliError::flag("--g")),
        (None, Some(g2)) => Coupling::from_squared(g2).map_err(CliError::flag("--g-squared")),
        (None, None) => Err(CliError::Usage {
            flag: "--g",
            message: "a coupling is required".into(),
        }),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coupling: CouplingArgs,
    /// Quantum number (even n: even parity, odd n: odd parity).
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Bracket width in k, where E = -k^2.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coupling: CouplingArgs,
    /// Highest quantum number to look for.
    #[arg(long, default_value_t = 20)]
    pub nmax: usize,
    /// Bracket width in k.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Compare every level with the finite-difference reference.
    #[arg(long)]
    pub check_oracle: bool,
    /// Reference box half-width L.
    #[arg(long, default_value_t = 40.0)]
    pub oracle_half_width: f64,
    /// Reference interior point count N (odd).
    #[arg(long, default_value_t = 16001)]
    pub oracle_points: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(id = "majorant", required = true, multiple = false, args = ["xi", "omega", "optimize"])]
pub struct HoboundArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coupling: CouplingArgs,
    /// Tangency point xi > 0.
    #[arg(long)]
    pub xi: Option<f64>,
    /// Spring constant omega > 0.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Minimize the bound over xi in (0, 3].
    #[arg(long)]
    pub optimize: bool,
    /// Oscillator level.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    /// x, V(x) and the osculating parabola.
    Fig1,
    /// Bound surface over (g, xi).
    Fig2,
    /// Stationary curve xi0, g(xi0), branch.
    Curve,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FigdataArgs {
    #[arg(value_enum)]
    pub which: Figure,
    /// CSV destination. Without it the data goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// fig1: well strength (default sqrt 2).
    #[arg(long, conflicts_with = "g_squared")]
    pub g: Option<f64>,
    /// fig1: well depth g^2.
    #[arg(long = "g-squared")]
    pub g_squared: Option<f64>,
    /// fig1: spring constant of the parabola.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = -4.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 800)]
    pub x_steps: usize,
    /// fig2: coupling range.
    #[arg(long, default_value_t = 0.5)]
    pub g_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub g_max: f64,
    #[arg(long, default_value_t = 25)]
    pub g_steps: usize,
    /// fig2 / curve: xi range (defaults 0.1..6 for fig2, 0.1..10 for curve).
    #[arg(long)]
    pub xi_min: Option<f64>,
    #[arg(long)]
    pub xi_max: Option<f64>,
    /// Number of xi intervals (defaults 59 for fig2, 99 for curve).
    #[arg(long)]
    pub xi_steps: Option<usize>,
}

impl FigdataArgs {
    pub fn coupling(&self) -> Result<Coupling, CliError> {
        if self.g.is_none() && self.g_squared.is_none() {
            return coupling_from(None, Some(2.0));
        }
        coupling_from(self.g, self.g_squared)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub coupling: CouplingArgs,
    /// Box half-width L.
    #[arg(long, default_value_t = 40.0)]
    pub half_width: f64,
    /// Interior point count N (odd).
    #[arg(long, default_value_t = 16001)]
    pub points: usize,
    /// Highest level index.
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
    /// Export the eigenvector of this level as CSV.
    #[arg(long, requires = "out")]
    pub eigenvector: Option<usize>,
    /// Destination for the eigenvector CSV.
    #[arg(long, requires = "eigenvector")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SelfcheckArgs {
    /// Suite to run.
    #[arg(value_enum, conflicts_with = "suite")]
    pub suite_name: Option<Suite>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
}

impl SelfcheckArgs {
    pub fn selected(&self) -> Suite {
        self.suite.or(self.suite_name).unwrap_or(Suite::All)
    }
}
