//! Self-regulated stigmergic swarm on dynamic lattice landscapes.
//!
//! Ants walk a toroidal grid, steered by a shared pheromone field. Deposits
//! scale with how good the visited altitude is relative to the best and worst
//! altitudes the colony has seen, and the population regulates itself through
//! energy decay, stochastic death and density-gated reproduction.
//!
//! The crate is organized bottom-up:
//!
//! * [`landscape`] — base functions, grid discretization and temporal dynamics
//! * [`ode`] — adaptive Runge–Kutta solver behind the optimal-control landscape
//! * [`swarm`] — the colony itself
//! * [`metrics`] — per-step records and run summaries
//! * [`bench`] — scenario presets and the multi-seed runner
//!
//! With the `parallel` feature (on by default) grid rebuilds and independent
//! seeds run on the rayon pool. Results do not depend on the execution mode.

pub mod bench;
pub mod error;
pub mod exec;
pub mod landscape;
pub mod metrics;
pub mod ode;
pub mod swarm;

pub use error::{Error, Result};
pub use exec::Execution;
