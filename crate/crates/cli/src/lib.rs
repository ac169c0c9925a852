//! Command-line front end for the goldfish models.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;
pub mod values;

use clap::Parser;

use crate::cli::{Cli, Command};
use crate::error::CliResult;

fn dispatch(cli: &Cli, args: &[String]) -> CliResult<bool> {
    match &cli.command {
        Command::Simulate(a) => commands::simulate_cmd(a),
        Command::Isochrony(a) => commands::isochrony_cmd(a, args),
        Command::Equilibria(a) => commands::equilibria_cmd(a, args),
        Command::Spectrum(a) => commands::spectrum_cmd(a, args),
        Command::Conjecture(a) => commands::conjecture_cmd(a, args),
        Command::Verify(a) => commands::verify_cmd(a, args),
        Command::Sweep(a) => sweep::sweep_cmd(a, args),
    }
}

/// Runs one invocation and returns the exit status: 0 verified, 1 failed
/// verification or runtime error, 2 usage error.
pub fn run(argv: Vec<String>) -> u8 {
    let argv = match config::merge(argv) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("goldfish: {e}");
            return e.exit_code() as u8;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    // program name left out so reports do not depend on the install path
    match dispatch(&cli, &argv[1..]) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("goldfish: {e}");
            e.exit_code() as u8
        }
    }
}
