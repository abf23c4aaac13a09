use permcrypt::Error;
use thiserror::Error as ThisError;

/// Failure classes, one per process exit code.
#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Crypto(String),
    #[error("{0}")]
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Crypto(_) => 3,
            CliError::Guard(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse(_) | Error::DegreeMismatch { .. } | Error::NotBijective { .. } => CliError::Input(msg),
            Error::GuardExceeded { .. } => CliError::Guard(msg),
            Error::InvalidDegree(_) | Error::ProfileTooLarge { .. } | Error::InvalidCycle(_) | Error::Overflow(_) => {
                CliError::Usage(msg)
            }
            _ => CliError::Crypto(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
