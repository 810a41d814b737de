use thiserror::Error;

/// Failure of a command, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed files, invalid inputs. Exit code 2.
    #[error("{0}")]
    Input(String),
    /// Singular or incomplete designs. Exit code 3.
    #[error("{0}")]
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl From<tomoinfo_core::Error> for CliError {
    fn from(e: tomoinfo_core::Error) -> Self {
        match e {
            tomoinfo_core::Error::Singular => CliError::Degenerate("incomplete design: Gram matrix is singular".into()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
