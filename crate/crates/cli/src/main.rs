//! `gti`: verify dual and Parseval frame properties of GTI systems from JSON descriptors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::{CliError, Outcome};

const TOL_VAR: &str = "GTI_TOL";

#[derive(Parser, Debug)]
#[command(
    name = "gti",
    version,
    about = "Dual and Parseval frame checks for GTI systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one verification and print a verdict.
    Verify(VerifyArgs),
    /// Report Calderon, CC, LIC and alpha-LIC quantities.
    Conditions(ConditionsArgs),
    /// Reproduce a named example as an expected-vs-computed table.
    Repro(ReproArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    DualTalpha,
    ParsevalTalpha,
    DualBrute,
    GaborTime,
    GaborFreq,
    FiniteGabor,
    Janssen,
}

impl VerifyKind {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReproId {
    #[value(name = "ex-0402e", alias = "layered-tiling")]
    LayeredTiling,
    ExReorderedOnb,
    ShannonWavelet,
    CalderonCont,
    GaborFinite,
    JanssenUnit,
}

impl ReproId {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Args, Debug, Default)]
#[group(multiple = false)]
struct Format {
    /// JSON on stdout (default).
    #[arg(long)]
    json: bool,
    /// The residual table as CSV.
    #[arg(long)]
    csv: bool,
    /// The residual table as whitespace-separated columns.
    #[arg(long = "gnuplot-data")]
    gnuplot_data: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    kind: VerifyKind,
    /// System descriptor (analysing side).
    #[arg(long)]
    sys: PathBuf,
    /// Second system (synthesis side); defaults to --sys.
    #[arg(long)]
    sys2: Option<PathBuf>,
    /// Tolerance; overrides GTI_TOL.
    #[arg(long)]
    tol: Option<f64>,
    /// Keep only the k largest residuals in the report.
    #[arg(long = "top-k")]
    top_k: Option<usize>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug)]
struct ConditionsArgs {
    #[arg(long)]
    sys: PathBuf,
    /// Subset K of the dual group or the torus.
    #[arg(long = "K")]
    k: Option<PathBuf>,
    /// Use only the first N layers.
    #[arg(long)]
    jmax: Option<usize>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args, Debug)]
pub struct ReproArgs {
    id: ReproId,
    #[arg(long = "N")]
    n: Option<u64>,
    #[arg(long)]
    jmax: Option<u32>,
    /// Numerator of alpha = k / 2^j*.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long)]
    jstar: Option<u32>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    format: Format,
}

/// `--tol`, then `GTI_TOL`, then the default.
fn tolerance(flag: Option<f64>) -> Result<f64, CliError> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_VAR) {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{TOL_VAR}={s:?} is not a number")))?,
            Err(std::env::VarError::NotPresent) => gti_core::DEFAULT_TOL,
            Err(e) => return Err(CliError::Usage(format!("{TOL_VAR}: {e}"))),
        },
    };
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!(
            "tolerance must be a finite nonnegative number, got {tol}"
        )))
    }
}

fn run(cli: &Cli) -> Result<(Outcome, &Format), CliError> {
    match &cli.command {
        Command::Verify(args) => Ok((commands::verify(args, tolerance(args.tol)?)?, &args.format)),
        Command::Conditions(args) => Ok((
            commands::conditions(&args.sys, args.k.as_deref(), args.jmax)?,
            &args.format,
        )),
        Command::Repro(args) => Ok((commands::repro(args, tolerance(args.tol)?)?, &args.format)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((outcome, format)) => {
            let text = if format.csv {
                outcome.table.csv()
            } else if format.gnuplot_data {
                outcome.table.gnuplot()
            } else {
                output::to_json(&outcome.json)
            };
            print!("{text}");
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            print!(
                "{}",
                output::to_json(&json!({"error": {"kind": e.kind(), "message": e.message()}}))
            );
            ExitCode::from(2)
        }
    }
}
