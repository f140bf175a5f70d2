use thiserror::Error;

/// Errors surfaced by the experiment runner, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// The config file could not be read, parsed, or validated. Exit code 2.
    #[error("config error: {0}")]
    Config(String),

    /// A numerical routine failed; the message names the offending point
    /// (cache size, window, or query). Exit code 3.
    #[error("numerics error: {0}")]
    Numerics(String),

    /// One or more acceptance criteria failed in `validate`. Exit code 4.
    #[error("acceptance failure: {}", failed.join("; "))]
    Acceptance { failed: Vec<String> },

    /// Artifact files could not be written. Exit code 1.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code contract: 0 success, 2 config, 3 numerics,
    /// 4 acceptance, 1 anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerics(_) => 3,
            CliError::Acceptance { .. } => 4,
            CliError::Io(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
