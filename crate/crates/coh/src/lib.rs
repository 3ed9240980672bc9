//! Command-line front end for the coherence toolkit.
//!
//! Five subcommands:
//!
//! - `measure`: evaluate coherence measures on a state read from a file;
//! - `reproduce`: replay the canonical counterexample registry and check
//!   every published value and verdict;
//! - `curves`: emit boundary-curve data `(t, c_max, c_min)` as CSV or JSON;
//! - `scan`: order seeded random state pairs under two measures and report
//!   violations as JSON;
//! - `monotonicity`: derivative-sign grids and channel-monotonicity checks.
//!
//! Exit codes: 0 success (scan violations are data, not errors), 1 failed
//! monotonicity check, 2 usage or input error, 3 reproduction mismatch.

#![forbid(unsafe_code)]

mod curves;
mod measure;
mod monotonicity;
mod render;
mod reproduce;
mod scan;
mod statefile;

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use coh_core::measures::MeasureId;

/// Exit code for usage and input errors.
const USAGE: i32 = 2;
/// Exit code when a reproduction check finds a mismatch.
pub(crate) const MISMATCH: i32 = 3;
/// Exit code when a monotonicity check fails.
pub(crate) const CHECK_FAILED: i32 = 1;

/// A command failure that maps to exit code 2.
#[derive(Debug, thiserror::Error)]
pub(crate) enum CliError {
    /// Bad flags, unreadable input, or a state failing validation.
    #[error("{0}")]
    Input(String),
    /// An output path that cannot be written.
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<coh_core::Error> for CliError {
    fn from(err: coh_core::Error) -> Self {
        Self::Input(err.to_string())
    }
}

/// Command outcome: an exit code, or an input error worth exit code 2.
pub(crate) type CmdResult = Result<i32, CliError>;

/// Output format for file-emitting commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub(crate) enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "coh",
    version,
    about = "Coherence measures, counterexample replay, and ordering scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate coherence measures on a state read from a file.
    Measure(measure::MeasureArgs),
    /// Replay canonical counterexamples and check published values.
    Reproduce(reproduce::ReproduceArgs),
    /// Emit boundary-curve data (t, c_max, c_min) as CSV or JSON.
    Curves(curves::CurvesArgs),
    /// Scan seeded random state pairs for ordering violations.
    Scan(scan::ScanArgs),
    /// Run derivative-sign and channel-monotonicity checks.
    Monotonicity(monotonicity::MonotonicityArgs),
}

/// Parses a measure token: `l1`, `l2`, `rel`, or `tsallis:<alpha>`.
pub(crate) fn parse_measure(token: &str) -> Result<MeasureId, CliError> {
    match token {
        "l1" => Ok(MeasureId::L1),
        "l2" => Ok(MeasureId::L2),
        "rel" | "rel-entropy" => Ok(MeasureId::RelEntropy),
        _ => match token.strip_prefix("tsallis:") {
            Some(order) => {
                let alpha: f64 = order.parse().map_err(|_| {
                    CliError::Input(format!("bad Tsallis order in measure '{token}'"))
                })?;
                Ok(MeasureId::tsallis(alpha)?)
            }
            None => Err(CliError::Input(format!(
                "unknown measure '{token}' (expected l1, l2, rel, or tsallis:<alpha>)"
            ))),
        },
    }
}

/// Parses a list of measure tokens, rejecting an empty list.
pub(crate) fn parse_measures(tokens: &[String]) -> Result<Vec<MeasureId>, CliError> {
    if tokens.is_empty() {
        return Err(CliError::Input("at least one measure is required".into()));
    }
    tokens.iter().map(|token| parse_measure(token)).collect()
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { USAGE } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Measure(args) => measure::cmd_measure(args),
        Command::Reproduce(args) => reproduce::cmd_reproduce(args),
        Command::Curves(args) => curves::cmd_curves(args),
        Command::Scan(args) => scan::cmd_scan(args),
        Command::Monotonicity(args) => monotonicity::cmd_monotonicity(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            USAGE
        }
    }
}
