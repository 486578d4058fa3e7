mod args;
mod bench;
mod commands;
mod dot;
mod error;
mod render;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(CliError::Usage(String::new()).exit_code()),
            };
        }
    };
    let result = match cli.command {
        Command::Index(a) => commands::index(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Check(a) => commands::check(a),
        Command::Bench(a) => bench::run(a),
        Command::Dot(a) => dot::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cdwg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
