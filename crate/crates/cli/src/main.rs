//! `rootbound`: root-modulus bounds, shape enumeration, property checks and
//! benchmarks from the command line.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] rootbound::Error),
    /// The reader went away, e.g. `| head`.
    #[error("broken pipe")]
    BrokenPipe,
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::BrokenPipe;
        }
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "rootbound",
    version,
    about = "Bounds on polynomial root moduli from sparse companion matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every applicable bound for one monic polynomial.
    Bound(BoundArgs),
    /// Count or list the unit sparse companion shapes of order n.
    Enumerate(EnumerateArgs),
    /// Check the registered properties over a seeded corpus.
    Verify(VerifyArgs),
    /// Bound tightness against the root oracle, one CSV row per polynomial.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
struct PolySource {
    /// Comma-separated coefficients a_0,...,a_{n-1} of a monic polynomial.
    #[arg(long, group = "source", allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// JSON file holding one polynomial.
    #[arg(long, group = "source")]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    source: PolySource,
    /// Read --coeffs from the leading coefficient down, normalizing by it.
    #[arg(long, requires = "coeffs")]
    descending: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(short = 'n', long = "degree")]
    degree: usize,
    /// Identify each shape with its flip.
    #[arg(long)]
    dedup: bool,
    /// List every shape, not only the counts.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Degree range such as `3..10`, `3..=10` (both inclusive) or `3,5,8`.
    #[arg(long)]
    degrees: Option<String>,
    /// Polynomials per degree and distribution.
    #[arg(long)]
    samples: Option<usize>,
    /// Comma-separated `uniform:A`, `integer:K`, `examples`.
    #[arg(long)]
    dist: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Run one property (or `soundness`) instead of all of them.
    #[arg(long)]
    theorem: Option<String>,
    /// `json` prints JSON lines on stdout and the summary on stderr.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// JSON array of polynomials; replaces the generated corpus.
    #[arg(long, conflicts_with_all = ["degrees", "samples", "dist"])]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Bound(a) => commands::bound(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Verify(a) => commands::verify(a),
        Command::Bench(a) => commands::bench(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CliError::BrokenPipe) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
