use thiserror::Error;

use crate::ode::IntegrationError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid dynamics: {0}")]
    InvalidDynamics(String),

    #[error("invalid swarm parameters: {0}")]
    InvalidParams(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error(transparent)]
    Integration(#[from] IntegrationError),

    #[error("metrics csv: {0}")]
    Csv(#[from] csv::Error),
}
