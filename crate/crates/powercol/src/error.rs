use crate::io::ParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] powercol_core::Error),
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use powercol_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Write { .. } => EXIT_USAGE,
            CliError::Core(E::LimitExceeded { .. }) => EXIT_LIMIT,
            CliError::Core(E::Consistency(_) | E::Overflow(_)) => EXIT_CHECK_FAILED,
            CliError::Core(_) => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
