use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{PheromoneField, SwarmParams};
use crate::landscape::{Cell, GridSpec};

/// Lattice steps for headings 0..8: N, NE, E, SE, S, SW, W, NW.
/// Rows grow southwards.
pub const HEADING_STEPS: [(i64, i64); 8] = [
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
];

/// Heading changes between 0..8 directions, in 45 degree units (0..=4).
#[inline]
pub fn turn_between(from: u8, to: u8) -> usize {
    let d = (from as i32 - to as i32).rem_euclid(8) as usize;
    d.min(8 - d)
}

/// Lattice position, heading and remaining energy of one ant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntState {
    pub cell: Cell,
    /// Index into [`HEADING_STEPS`].
    pub heading: u8,
    pub energy: f64,
}

impl AntState {
    pub fn new(cell: Cell, heading: u8) -> Self {
        Self { cell, heading: heading % 8, energy: 1.0 }
    }
}

/// Osmotropotaxic response `(1 + s / (1 + gamma s))^beta` to concentration `s`.
#[inline]
pub fn weight_pheromone(sigma: f64, beta: f64, gamma: f64) -> f64 {
    (1.0 + sigma / (1.0 + gamma * sigma)).powf(beta)
}

/// Where an ant may go next: one probability per heading, or stay put when
/// every neighbour is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MoveDistribution {
    Move([f64; 8]),
    Stay,
}

impl MoveDistribution {
    pub fn probabilities(&self) -> [f64; 8] {
        match self {
            MoveDistribution::Move(p) => *p,
            MoveDistribution::Stay => [0.0; 8],
        }
    }

    pub fn stay_probability(&self) -> f64 {
        match self {
            MoveDistribution::Move(_) => 0.0,
            MoveDistribution::Stay => 1.0,
        }
    }
}

/// Normalized transition probabilities over the Moore neighbourhood.
///
/// Each free neighbour gets `W(sigma) * w(turn)`, occupied neighbours get zero.
pub fn transition_probs(
    ant: &AntState,
    field: &PheromoneField,
    occupancy: &[bool],
    grid: &GridSpec,
    params: &SwarmParams,
) -> MoveDistribution {
    let mut weights = [0.0; 8];
    let mut total = 0.0;
    for (dir, &(dc, dr)) in HEADING_STEPS.iter().enumerate() {
        let idx = grid.index(grid.offset(ant.cell, dc, dr));
        if occupancy[idx] {
            continue;
        }
        let w = weight_pheromone(field.get(idx), params.beta, params.gamma)
            * params.direction_weights[turn_between(ant.heading, dir as u8)];
        weights[dir] = w;
        total += w;
    }
    if total <= 0.0 {
        return MoveDistribution::Stay;
    }
    for w in &mut weights {
        *w /= total;
    }
    MoveDistribution::Move(weights)
}

/// Samples a heading from `probs`, falling back to the last positive entry
/// when rounding leaves the draw past the cumulative sum.
pub fn sample_heading<R: Rng + ?Sized>(probs: &[f64; 8], rng: &mut R) -> u8 {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = i;
        if u < acc {
            return i as u8;
        }
    }
    last as u8
}

/// Moves the ant according to `dist`. Staying keeps position and heading.
pub fn step_ant<R: Rng + ?Sized>(
    ant: &AntState,
    dist: &MoveDistribution,
    grid: &GridSpec,
    rng: &mut R,
) -> AntState {
    match dist {
        MoveDistribution::Stay => *ant,
        MoveDistribution::Move(probs) => {
            let heading = sample_heading(probs, rng);
            let (dc, dr) = HEADING_STEPS[heading as usize];
            AntState { cell: grid.offset(ant.cell, dc, dr), heading, ..*ant }
        }
    }
}
