//! Library side of the `halfscan` binary: argument types, CSV formats,
//! reports and the four commands.

pub mod args;
pub mod commands;
pub mod io;
pub mod report;

use thiserror::Error;

pub use args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    Csv { path: String, line: u64, msg: String },
    #[error("guard: {0}")]
    Guard(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(halfscan::Error),
}

impl From<halfscan::Error> for CliError {
    fn from(e: halfscan::Error) -> Self {
        match e {
            halfscan::Error::TooLargeForOracle { .. } => CliError::Guard(e.to_string()),
            other => CliError::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Csv { .. } => 2,
            CliError::Guard(_) => 3,
            _ => 1,
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    use args::Command;
    match &cli.command {
        Command::Scan(a) => commands::scan(cli, a),
        Command::Count(a) => commands::count(cli, a),
        Command::Gen(a) => commands::gen(cli, a),
        Command::Bench(a) => commands::bench(cli, a),
    }
}
