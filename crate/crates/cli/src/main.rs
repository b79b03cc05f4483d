mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use dynsym::Error;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(Error),
    /// Number of failed reproduction checks.
    Failed(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Core(Error::DimensionMismatch { .. } | Error::BadSubsystem { .. }) => 3,
            CliError::Core(Error::NoConvergence(_)) => 4,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) | CliError::Io(m) => eprintln!("error: {m}"),
                CliError::Core(err) => eprintln!("error: {err}"),
                CliError::Failed(n) => eprintln!("{n} check(s) failed"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
