//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use goldfish_core::dynamics::{Method, System};
use goldfish_core::polynomials::Rational;
use goldfish_core::Complex64;

use crate::values::{self, ComplexList, Grid, RationalList};

#[derive(Debug, Parser)]
#[command(
    name = "goldfish",
    version,
    about = "Simulate and verify solvable goldfish many-body models"
)]
pub struct Cli {
    /// JSON file of flag values; explicit flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a model and write its trajectory as CSV (and SVG).
    Simulate(SimulateArgs),
    /// Check the period of random trajectories of an isochronous model.
    Isochrony(IsochronyArgs),
    /// Enumerate equilibrium configurations and check them exactly.
    Equilibria(EquilibriaArgs),
    /// Spectrum of the pencil linearised about an isochronous equilibrium.
    Spectrum(SpectrumArgs),
    /// Test a conjectured spectrum on one cell.
    Conjecture(ConjectureArgs),
    /// Run the built-in exact verification suite.
    Verify(VerifyArgs),
    /// Run a (nu, mu, N) grid of spectral checks in parallel.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Output file (stdout when absent).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Add wall-clock time to the report.
    #[arg(long)]
    pub timing: bool,
}

fn system(s: &str) -> Result<System, String> {
    s.parse().map_err(|e: goldfish_core::Error| e.to_string())
}

fn method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: goldfish_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = system)]
    pub system: System,
    #[arg(long)]
    pub n: usize,
    /// a^2 as "re,im".
    #[arg(long, value_parser = values::complex, allow_hyphen_values = true)]
    pub a2: Option<Complex64>,
    #[arg(long, value_parser = values::complex, allow_hyphen_values = true)]
    pub alpha: Option<Complex64>,
    #[arg(long, value_parser = values::complex, allow_hyphen_values = true)]
    pub beta: Option<Complex64>,
    #[arg(long, value_parser = values::complex, allow_hyphen_values = true)]
    pub gamma: Option<Complex64>,
    /// Coupling of the rCM and Veselov models.
    #[arg(long, value_parser = values::complex, allow_hyphen_values = true)]
    pub g: Option<Complex64>,
    /// Ascending coefficients of Phi, separated by ';' or given as
    /// repeated flags.
    #[arg(long, value_parser = values::complex_list, allow_hyphen_values = true)]
    pub phi: Vec<ComplexList>,
    /// Initial positions ("re,im" separated by ';' or repeated flags);
    /// zeros for coefficient systems, N^2 row-major entries of U for
    /// matrix systems.
    #[arg(long, value_parser = values::complex_list, allow_hyphen_values = true)]
    pub z0: Vec<ComplexList>,
    /// Initial velocities, laid out like `--z0`.
    #[arg(long, value_parser = values::complex_list, allow_hyphen_values = true)]
    pub v0: Vec<ComplexList>,
    /// Draw the initial data from `--seed` instead.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Radius of the random initial data.
    #[arg(long, default_value_t = 0.3)]
    pub scale: f64,
    #[arg(long)]
    pub t_end: f64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    #[arg(long, default_value = "direct", value_parser = method)]
    pub method: Method,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// CSV output (stdout when absent).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Also draw the paths in the complex plane.
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IsochronyArgs {
    #[arg(long, default_value = "isogold", value_parser = system)]
    pub system: System,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.3)]
    pub scale: f64,
    #[arg(long, default_value_t = 16)]
    pub samples_per_period: usize,
    /// Largest deviation accepted after p periods.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub ode_tol: f64,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
#[group(id = "family", required = true, multiple = false, args = ["iso", "altgold"])]
pub struct EquilibriaArgs {
    /// Equilibria of the isochronous coefficient system.
    #[arg(long)]
    pub iso: bool,
    /// Equilibria of the plain coefficient system.
    #[arg(long)]
    pub altgold: bool,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub nu: Option<u32>,
    #[arg(long)]
    pub mu: Option<u32>,
    #[arg(long, default_value = "1", value_parser = values::rational, allow_hyphen_values = true)]
    pub a: Rational,
    /// Free-constant samples (defaults depend on the family).
    #[arg(long, value_parser = values::rational_list, allow_hyphen_values = true)]
    pub free: Option<RationalList>,
    /// Report root multiplicities.
    #[arg(long)]
    pub genuineness: bool,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub nu: u32,
    #[arg(long)]
    pub mu: u32,
    #[arg(long)]
    pub n: usize,
    /// Free constant of the nu = 5 family.
    #[arg(long, default_value = "0", value_parser = values::rational, allow_hyphen_values = true)]
    pub free: Rational,
    /// Exact characteristic polynomial and integer roots.
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    C215,
    C217,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long)]
    pub nu: u32,
    /// Rational for the partial-spectrum claim, integer otherwise.
    #[arg(long, value_parser = values::rational)]
    pub mu: Rational,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = values::rational_list, allow_hyphen_values = true)]
    pub free: Option<RationalList>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest N of the exact grids.
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Integrality,
    C215,
    C217,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "integrality")]
    pub kind: SweepKind,
    /// nu values, e.g. "0,1,3-5".
    #[arg(long, default_value = "0,1,3,4,5", value_parser = values::grid)]
    pub nu: Grid,
    /// mu values; every admissible mu when absent. Rationals are allowed
    /// for the partial-spectrum sweep.
    #[arg(long, value_parser = values::rational_list)]
    pub mu: Option<RationalList>,
    /// N values, e.g. "1-10".
    #[arg(long, value_parser = values::grid)]
    pub n: Grid,
    #[arg(long, value_parser = values::rational_list, allow_hyphen_values = true)]
    pub free: Option<RationalList>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Cell "nu,mu,n" whose first coefficient is shifted by 1/2; repeatable.
    #[arg(long, value_parser = values::cell)]
    pub perturb: Vec<(u32, u32, u32)>,
    /// Pass/fail matrix as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub report: ReportArgs,
}
