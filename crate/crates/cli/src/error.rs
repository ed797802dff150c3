use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown key `{0}`")]
    UnknownKey(String),

    #[error("bad value for `{key}`: `{value}` ({reason})")]
    BadValue { key: String, value: String, reason: String },

    #[error("{path}:{line}: expected key=value, got `{text}`")]
    Syntax { path: PathBuf, line: usize, text: String },

    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("output directory {0} is locked by another run")]
    Locked(PathBuf),

    #[error(transparent)]
    Core(#[from] srs_core::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("state dump {path}: {source}")]
    State { path: PathBuf, source: serde_json::Error },
}

impl CliError {
    pub fn bad_value(key: &str, value: &str, reason: impl ToString) -> Self {
        CliError::BadValue { key: key.into(), value: value.into(), reason: reason.to_string() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 1 for anything wrong with the request, 2 for failures while carrying it out.
    pub fn exit_code(&self) -> i32 {
        use srs_core::Error as E;
        match self {
            CliError::UnknownKey(_) | CliError::BadValue { .. } | CliError::Syntax { .. } | CliError::Config(_) => 1,
            CliError::Core(
                E::InvalidGrid(_) | E::InvalidDynamics(_) | E::InvalidParams(_) | E::InvalidScenario(_) | E::UnknownPreset(_),
            ) => 1,
            CliError::Core(_) | CliError::Io { .. } | CliError::Locked(_) | CliError::Csv(_) | CliError::State { .. } => 2,
        }
    }
}
