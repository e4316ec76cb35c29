mod args;
mod commands;
mod error;
mod matfile;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Decompose(a) => commands::decompose(a),
        Command::SweepEps(a) => commands::sweep_eps(a),
        Command::Verify(a) => commands::verify(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
