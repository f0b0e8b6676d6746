//! The `teamform` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

pub mod commands;
pub mod report;

use commands::{bench, certify, ingest, metrics, reduce, solve};

#[derive(Debug, Parser)]
#[command(name = "teamform", version, about = "Team formation in skill graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Form one team and print its report.
    Solve(solve::SolveArgs),
    /// Check approximation ratios or the 3-SAT reduction.
    Certify(certify::CertifyArgs),
    /// Run every (k, skill, algorithm) cell and print CSV.
    Bench(bench::BenchArgs),
    /// Publication metrics of a team.
    Metrics(metrics::MetricsArgs),
    /// Build a coauthorship graph from a corpus.
    Ingest(ingest::IngestArgs),
    /// Turn a 3-SAT file into a graph and task.
    Reduce(reduce::ReduceArgs),
}

/// Failures with their own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("corpus has no publications")]
    EmptyCorpus,
    #[error("{0} certificate(s) failed")]
    CertificateFailed(usize),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_HEURISTIC: i32 = 3;

/// Maps an error to the process exit status.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if let Some(core) = err.downcast_ref::<teamform_core::Error>() {
        return match core {
            teamform_core::Error::Infeasible { .. } => EXIT_INFEASIBLE,
            teamform_core::Error::HeuristicFailure(_) => EXIT_HEURISTIC,
            _ => EXIT_ERROR,
        };
    }
    match err.downcast_ref::<CliError>() {
        Some(CliError::EmptyCorpus) => EXIT_INFEASIBLE,
        _ => EXIT_ERROR,
    }
}

/// Parses `args` (program name first), runs the command writing to `out`,
/// reports errors on `err` and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let result = match cli.command {
        Command::Solve(a) => solve::run(&a, &echo, out),
        Command::Certify(a) => certify::run(&a, out, err),
        Command::Bench(a) => bench::run(&a, out),
        Command::Metrics(a) => metrics::run(&a, out),
        Command::Ingest(a) => ingest::run(&a, out),
        Command::Reduce(a) => reduce::run(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

pub(crate) fn read_file(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub(crate) fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub(crate) fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Splits a comma-separated flag value, dropping empty items.
pub(crate) fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}
