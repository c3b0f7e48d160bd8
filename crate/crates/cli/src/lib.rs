//! File formats, configuration parsing and the `prom` command-line tool.
//!
//! Formats: `PKSP` k-space stacks, `PMSK` masks, `key = value` run
//! configurations, CSV traces and metric reports, and binary PGM images.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::{CliError, EXIT_OK, EXIT_USAGE};

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::PhantomGen {
            family,
            count,
            size,
            seed,
            out,
        } => commands::phantom_gen(&family, count as usize, size, seed, &out),
        Command::Optimize {
            data,
            config,
            out_mask,
            trace,
        } => commands::optimize(&data, config.as_deref(), &out_mask, trace.as_deref()),
        Command::Baseline {
            kind,
            alpha,
            size,
            seed,
            out,
            center_frac,
            sigma_frac,
        } => commands::baseline(kind, alpha, size, seed, &out, center_frac, sigma_frac),
        Command::Evaluate {
            data,
            mask,
            metrics,
            out,
        } => commands::evaluate(&data, &mask, &metrics, &out),
        Command::Export {
            mask,
            recon,
            slice,
            out,
        } => commands::export(&mask, recon.as_deref(), slice, &out),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
