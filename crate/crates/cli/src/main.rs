mod cli;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Commands, ExperimentCommand};

/// A failure with the exit code of its class: 2 construction, 3 input,
/// 4 labels or scheme, 5 parameters.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

pub const EXIT_CONSTRUCTION: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_SCHEME: u8 = 4;
pub const EXIT_PARAMETERS: u8 = 5;

pub trait OrExit<T> {
    fn or_exit(self, code: u8) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrExit<T> for Result<T, E> {
    fn or_exit(self, code: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code,
            error: e.into(),
        })
    }
}

pub fn fail<T>(code: u8, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure {
        code,
        error: anyhow::anyhow!(msg.into()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Commands::Gen(args) => commands::gen(args),
        Commands::Analyze(args) => commands::analyze(args),
        Commands::Color(args) => commands::color(args),
        Commands::Random(args) => commands::random(args),
        Commands::Experiment(ExperimentCommand::Discrepancy(args)) => commands::discrepancy(args),
        Commands::Experiment(ExperimentCommand::Cdr(args)) => commands::cdr(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
