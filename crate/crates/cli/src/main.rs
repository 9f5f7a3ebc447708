//! `boolfn`: analyze single Boolean functions, run Monte Carlo suites over
//! random ones, and enumerate all functions of small dimension.
//!
//! Exit codes: 0 success, 1 a checked claim failed, 2 usage error,
//! 3 refused by a cost guard.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use boolfn_core::BoolFnError;
use clap::error::ErrorKind;
use clap::Parser;

use crate::config::{Cli, ConfigError, RunConfig};

const EXIT_CLAIM_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COST_GUARD: u8 = 3;

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    let msg = msg.to_string();
    let line = msg
        .lines()
        .next()
        .unwrap_or("")
        .trim_start_matches("error: ");
    eprintln!("error: {line}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let config = match RunConfig::from_command(cli.command) {
        Ok(c) => c,
        Err(ConfigError::Usage(msg)) => return fail(EXIT_USAGE, msg),
        Err(ConfigError::CostGuard(msg)) => return fail(EXIT_COST_GUARD, msg),
    };
    if cli.output.threads == Some(0) {
        return fail(EXIT_USAGE, "--threads must be positive");
    }

    let run = || commands::run(config);
    let result = match cli.output.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => return fail(EXIT_USAGE, e),
        },
        None => run(),
    };
    let report = match result {
        Ok(r) => r,
        Err(e @ BoolFnError::CostGuard { .. }) => return fail(EXIT_COST_GUARD, e),
        Err(e) => return fail(EXIT_USAGE, e),
    };

    let bytes = match output::render(&report, cli.output.format) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let written = match &cli.output.out {
        Some(path) => output::write_atomic(path, &bytes),
        None => std::io::stdout().lock().write_all(&bytes),
    };
    if let Err(e) = written {
        return fail(EXIT_USAGE, format!("cannot write report: {e}"));
    }
    if report.claims.iter().any(|c| c.failed()) {
        ExitCode::from(EXIT_CLAIM_FAILED)
    } else {
        ExitCode::SUCCESS
    }
}
