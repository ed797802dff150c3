//! Scenario catalog and the multi-seed experiment runner.

mod runner;
mod scenario;

pub use runner::{run_scenario, run_seed, run_seed_with, ScenarioReport, Simulation, StepOutcome};
pub use scenario::{catalog, preset, seeds_from, Scenario, DEFAULT_MASTER_SEED, DEFAULT_SEED_COUNT};
