use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] bipartify::Error),

    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: bipartify::Error,
    },

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("summary has no {0} series")]
    MissingSeries(String),

    #[error("malformed summary: {0}")]
    Summary(#[from] serde_json::Error),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_computational() => EXIT_COMPUTE,
            CliError::Core(bipartify::Error::Parse { .. } | bipartify::Error::TooLarge { .. }) => EXIT_INPUT,
            CliError::Core(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Input { source, .. } if source.is_computational() => EXIT_COMPUTE,
            CliError::Read { .. }
            | CliError::Input { .. }
            | CliError::Config { .. }
            | CliError::MissingSeries(_)
            | CliError::Summary(_) => EXIT_INPUT,
            CliError::Write { .. } => EXIT_USAGE,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
