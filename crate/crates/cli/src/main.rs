//! `qdecode` command-line front end.

mod args;
mod code_spec;
mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, CliResult};

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Verify(a) => {
            if commands::verify(a)? {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
        Command::DecodeOne(a) => commands::decode_one(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdecode: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
