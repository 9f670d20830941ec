use std::fmt;

/// CLI failures, split by exit code: usage/parse problems exit 2, model
/// evaluation problems exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Model(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn model(err: impl fmt::Display) -> Self {
        CliError::Model(err.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Model(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;
