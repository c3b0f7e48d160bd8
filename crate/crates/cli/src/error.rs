use prom_core::{Error, TrainFailure};

use crate::config::ConfigError;
use crate::formats::{FileError, FormatError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("training failed: {0}")]
    Training(#[from] TrainFailure),
}

fn core_code(e: &Error) -> u8 {
    match e {
        Error::NumericalFailure { .. } => EXIT_NUMERICAL,
        Error::InvalidConfig(_) | Error::CenterExceedsBudget { .. } | Error::EmptyShape { .. } => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Data(_) | CliError::File(_) | CliError::Format(_) => EXIT_DATA,
            CliError::Core(e) => core_code(e),
            CliError::Training(f) => core_code(&f.error),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Data(format!("writing csv: {e}"))
    }
}
