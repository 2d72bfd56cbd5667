//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage
//! or validation error.

mod commands;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::boson::{Branch, RepresentationParams};
use crate::error::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ceheis", version, about = "Centrally extended Heisenberg algebra: verification and tabulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the invariant suite for one value of z.
    Verify(VerifyArgs),
    /// Tabulate the vacuum MGF of a + a† + h against the matrix oracle (CSV).
    Mgf(MgfArgs),
    /// Relation defects of a Fock representation (JSON).
    Rep(RepArgs),
    /// Group-law operations (JSON).
    Group(GroupArgs),
    /// Basis change from the real form onto η₄.
    Classify(ClassifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    ReNonzero,
    ReZero,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::ReNonzero => Branch::ReNonzero,
            BranchArg::ReZero => Branch::ReZero,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// z as RE IM
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, default_values_t = [1.0, 1.0])]
    pub z: Vec<f64>,
    /// One-mode Fock dimension
    #[arg(long, default_value_t = 40)]
    pub dim: usize,
    #[arg(long, default_value_t = 4)]
    pub margin: usize,
    /// Fock dimension for the splitting check
    #[arg(long, default_value_t = 128)]
    pub split_dim: usize,
    /// Levels per mode for the two-mode checks
    #[arg(long, default_value_t = 24)]
    pub two_mode_dim: usize,
    /// Random samples per fuzz check
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Shift the structure constant [l_I, l_J]_K by 1e-3 before checking
    #[arg(long, num_args = 3, value_names = ["I", "J", "K"])]
    pub mutate: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct RepParamArgs {
    /// z as RE IM
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, required = true)]
    pub z: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub rho: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Taken from an exact test on Re z when omitted
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
}

#[derive(Args, Debug, Clone)]
pub struct MgfArgs {
    #[command(flatten)]
    pub rep: RepParamArgs,
    /// Defaults to −s-max
    #[arg(long, allow_negative_numbers = true)]
    pub s_min: Option<f64>,
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub s_max: f64,
    #[arg(long, default_value_t = 0.05)]
    pub s_step: f64,
    #[arg(long, default_value_t = 48)]
    pub dim: usize,
    /// Relative-error tolerance for the exit code
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct RepArgs {
    #[command(flatten)]
    pub rep: RepParamArgs,
    #[arg(long, default_value_t = 40)]
    pub dim: usize,
    #[arg(long, default_value_t = 4)]
    pub margin: usize,
    /// Include the matrices of a, a_dag, h, E
    #[arg(long)]
    pub dump: bool,
    /// Use the two-mode CCR construction instead of the Boson one
    #[arg(long)]
    pub two_mode: bool,
    /// Free complex parameter c of the two-mode construction, as RE IM
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, default_values_t = [0.0, 0.0])]
    pub c: Vec<f64>,
    #[arg(long, default_value_t = 24)]
    pub dim_per_mode: usize,
    /// Residual tolerance (defaults to 1e-10, or 1e-9 with --two-mode)
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    #[command(subcommand)]
    pub op: GroupOp,
}

#[derive(Subcommand, Debug, Clone)]
pub enum GroupOp {
    /// {"z": [re, im], "g1": [[re, im] x4], "g2": [[re, im] x4]} -> g1·g2
    Compose(GroupInput),
    /// {"z": [re, im], "g": [[re, im] x4]} -> g⁻¹
    Inverse(GroupInput),
    /// Random associativity, identity, inverse and operator-oracle checks
    Fuzz(FuzzArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GroupInput {
    /// Input JSON inline
    #[arg(long, conflicts_with = "input")]
    pub json: Option<String>,
    /// Input JSON file, `-` for standard input
    #[arg(long, default_value = "-")]
    pub input: String,
}

#[derive(Args, Debug, Clone)]
pub struct FuzzArgs {
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, default_values_t = [1.0, 1.0])]
    pub z: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Pairs checked against the operator oracle
    #[arg(long, default_value_t = 50)]
    pub oracle_samples: usize,
    #[arg(long, default_value_t = 40)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true, required = true)]
    pub z: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Usage or validation failure, reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        UsageError(e.to_string())
    }
}

pub(crate) type CliResult = Result<i32, UsageError>;

pub(crate) fn complex_arg(pair: &[f64]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

/// `[re, im]` with negative zeros normalised.
pub(crate) fn pair(c: Complex64) -> [f64; 2] {
    [c.re + 0.0, c.im + 0.0]
}

pub(crate) fn rep_params(args: &RepParamArgs) -> Result<RepresentationParams, UsageError> {
    let z = complex_arg(&args.z);
    let branch = args.branch.map(Branch::from).unwrap_or_else(|| Branch::of(z));
    Ok(RepresentationParams::new(z, args.rho, args.r, branch)?)
}

pub(crate) fn check_dim(dim: usize, what: &str) -> Result<(), UsageError> {
    if dim < crate::boson::MIN_REP_DIM {
        return Err(UsageError(format!("{what} must be at least {}, got {dim}", crate::boson::MIN_REP_DIM)));
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => verify::run(a, out),
        Command::Mgf(a) => commands::mgf(a, out),
        Command::Rep(a) => commands::rep(a, out),
        Command::Group(a) => commands::group(a, out),
        Command::Classify(a) => commands::classify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
