//! Command implementations behind the `cyws` binary.

pub mod commands;
pub mod format;
pub mod run;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cyws::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 for failed internal cross-checks, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 2,
            _ => 1,
        }
    }
}
