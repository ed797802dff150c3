//! Command-line front end for the self-regulated swarm simulator: scenario
//! runs, parameter sweeps, and CSV / PGM export.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod render;
pub mod state;

pub use error::{CliError, Result};
