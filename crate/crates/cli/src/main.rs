mod args;
mod commands;
mod output;
mod range;

use std::process::ExitCode;

use clap::Parser;
use ssfrenet_core::Error;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                _ if e.is_parse() => 2,
                Error::EmptyRange(_) | Error::Step(_) | Error::Range(_) | Error::Parameter(_) => 2,
                Error::NotUnitSpeed { .. } => 3,
                Error::Domain(_) => 4,
                Error::Constraint(_) => 5,
                _ => 1,
            },
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Frame(a) => commands::frame(a),
        Command::Classify(a) => commands::classify(a),
        Command::Geodesic(a) => commands::geodesic(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
