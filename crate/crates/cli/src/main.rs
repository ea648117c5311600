use std::process::ExitCode;

use clap::Parser;
use susy_pct_cli::Cli;

fn main() -> ExitCode {
    susy_pct_cli::run(Cli::parse())
}
