//! Command-line front end for `susy-pct`: spectrum tables, wavefunction
//! sampling, Riccati profiles, figure data export and the verification
//! battery.
//!
//! Exit codes: 0 success, 1 failed verification or numerical error,
//! 2 configuration error.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use susy_pct::models::ModelError;
use susy_pct::numerics::NumericsError;
use susy_pct::pct::PctError;
use susy_pct::susy::SusyError;

pub use config::{Options, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Susy(#[from] SusyError),
    #[error(transparent)]
    Pct(#[from] PctError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "susy-pct", version, about = "Supersymmetric partner Hamiltonians from point canonical transformations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seed and partner energies per level
    Spectrum(Options),
    /// Sample wavefunctions and densities on a grid
    Wavefn(Options),
    /// Run the verification battery and emit a report
    Verify(Options),
    /// Sample ξ, W and the Riccati residual on a grid
    Riccati(Options),
    /// Write the density data behind the three figures
    Export(Options),
}

/// Runs a parsed command line and maps the outcome to an exit code.
pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Spectrum(o) => o.resolve().and_then(|c| commands::spectrum(&c)),
        Command::Wavefn(o) => o.resolve().and_then(|c| commands::wavefn(&c)),
        Command::Verify(o) => o.resolve().and_then(|c| commands::verify(&c)),
        Command::Riccati(o) => o.resolve().and_then(|c| commands::riccati(&c)),
        Command::Export(o) => o.resolve().and_then(|c| commands::export(&c)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
