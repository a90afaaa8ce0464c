//! Command implementations behind the `opaque-cover` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use opaque_coverage::coverage::compute_coverage;
use opaque_coverage::oracle::is_blocked;
use opaque_coverage::Rational;
use thiserror::Error;

use crate::gen::{ngon, GenError};
use crate::io::{parse_point, parse_rational, InputDocument, InputError, OutputDocument};
use crate::selftest::{self, SelftestConfig};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "opaque-cover", version, about = "Exact coverage regions of segment barriers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the maximal covered regions of a barrier.
    Coverage(CoverageArgs),
    /// Decide whether one point is blocked.
    Query(QueryArgs),
    /// Generate an instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check the pipeline on random barriers.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct CoverageArgs {
    /// Input JSON document.
    pub input: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG drawing.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Include per-stage timings in the statistics.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    pub input: PathBuf,
    /// Point as `x,y`, each coordinate `n` or `n/d`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Regular polygon with gaps at the corners.
    Ngon {
        #[arg(long)]
        n: usize,
        /// Fraction of each edge removed at both ends, `n` or `n/d`.
        #[arg(long, default_value = "1/100")]
        gap: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 6)]
    pub max_segments: usize,
    #[arg(long, default_value_t = 10)]
    pub bound: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: InputError },
    #[error("{0}")]
    Argument(String),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => EXIT_INVARIANT,
            _ => EXIT_INPUT,
        }
    }
}

fn read_input(path: &Path) -> Result<InputDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    InputDocument::parse(&text).map_err(|source| CliError::Input { path: path.into(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.into(), source })
}

/// Writes `text` to `out`, or returns it for stdout.
fn emit(out: Option<&Path>, text: String) -> Result<String, CliError> {
    match out {
        Some(path) => write_file(path, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

/// Runs a command and returns what it prints on stdout.
pub fn run(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Coverage(args) => coverage(args),
        Command::Query(args) => query(args),
        Command::Gen(GenCommand::Ngon { n, gap, out }) => {
            let gap: Rational = parse_rational(gap).map_err(CliError::Argument)?;
            emit(out.as_deref(), ngon(*n, &gap)?.to_json())
        }
        Command::Selftest(args) => {
            let report = selftest::run(&SelftestConfig {
                count: args.count,
                max_segments: args.max_segments,
                bound: args.bound,
                seed: args.seed,
            });
            let text = report.render();
            if report.passed() {
                Ok(text)
            } else {
                Err(CliError::Invariant(text))
            }
        }
    }
}

fn coverage(args: &CoverageArgs) -> Result<String, CliError> {
    let barrier =
        read_input(&args.input)?.to_barrier().map_err(|source| CliError::Input { path: args.input.clone(), source })?;
    let result = compute_coverage(&barrier);
    if let Some(path) = &args.svg {
        write_file(path, &svg::render(&result))?;
    }
    emit(args.out.as_deref(), OutputDocument::from_result(&result, args.stats).to_json())
}

fn query(args: &QueryArgs) -> Result<String, CliError> {
    let barrier =
        read_input(&args.input)?.to_barrier().map_err(|source| CliError::Input { path: args.input.clone(), source })?;
    let p = parse_point(&args.point).map_err(CliError::Argument)?;
    let verdict = is_blocked(&p, &barrier);
    Ok(match verdict.witness {
        Some(d) => format!("clear {d}\n"),
        None => "blocked\n".to_string(),
    })
}
