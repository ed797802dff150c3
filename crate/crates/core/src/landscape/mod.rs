//! Base functions, their discretization over a toroidal lattice and the
//! dynamics that move them around.

mod dynamics;
mod functions;
mod grid;

pub use dynamics::{
    advance_circular, advance_linear, advance_path, advance_random, advance_severity,
    DynamicsKind, DynamicsSpec, EnvironmentState,
};
pub use functions::{eval_ackley, eval_schaffer_f7, BaseFunction};
pub use grid::{rebuild_grid, Cell, Domain2D, GridSpec, LandscapeGrid, TIE_TOLERANCE};
