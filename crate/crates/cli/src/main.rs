//! `toda`: evolve discrete Toda grids, audit coprimeness, verify identities.
//!
//! Exit codes: 0 all checks pass, 1 a mandated check failed (including an
//! inexact division), 2 singular or degenerate data, 3 configuration error.

mod args;
mod commands;
mod config;
mod error;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use toda_core::par::{requested_workers, with_workers};

use args::{Cli, Command, Format, OutputArgs};
use error::{exit, CliError};
use report::Report;

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Evolve(a) => commands::evolve(config::evolve_config(a)?),
        Command::Audit(a) => commands::audit(config::audit_config(a)?),
        Command::Verify(a) => commands::verify(config::verify_config(a)?),
        Command::ScanF(a) => commands::scan_f(config::scan_config(a)?),
    }
}

fn output(cli: &Cli) -> &OutputArgs {
    match &cli.command {
        Command::Evolve(a) => &a.output,
        Command::Audit(a) => &a.grid.output,
        Command::Verify(a) => &a.output,
        Command::ScanF(a) => &a.output,
    }
}

fn emit(out: &OutputArgs, report: &Report) -> Result<(), CliError> {
    let body = match out.format {
        Format::Text => report.text.clone(),
        Format::Json => report.to_json(),
    };
    match &out.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::CONFIG } else { exit::PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = with_workers(requested_workers(), || run(&cli));
    let code = match result.and_then(|r| emit(output(&cli), &r).map(|_| r.exit)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("toda: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
