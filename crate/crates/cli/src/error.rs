use thiserror::Error;

use tgrs::classify::ClassifyError;
use tgrs::construct::ConstructError;
use tgrs::field::FieldError;
use tgrs::tgrs::SpecError;

/// Failure of a subcommand, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("outside theorem scope: {0}")]
    OutOfScope(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::OutOfScope(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::OutOfScope(msg) => CliError::OutOfScope(msg),
            ClassifyError::ZeroEta(_) | ClassifyError::NoFastPath { .. } | ClassifyError::AlreadyMds => {
                CliError::OutOfScope(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::NotCoprime { .. } | ConstructError::BoundFails { .. } | ConstructError::NoSplitting => {
                CliError::OutOfScope(e.to_string())
            }
            ConstructError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            ConstructError::Classify(c) => c.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}
