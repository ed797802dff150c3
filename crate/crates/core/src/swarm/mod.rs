//! The colony: movement by pheromone-weighted lattice transitions,
//! altitude-coupled deposits, evaporation, energy decay and density-gated
//! reproduction.
//!
//! [`tick`] is sequential by construction: ants act in creation order, each
//! seeing the deposits and moves of the ants before it in the same step.

mod field;
mod moves;
mod params;

pub use field::{deposit_amount, evaporate, AltitudeNormalizer, PheromoneField};
pub use moves::{
    sample_heading, step_ant, transition_probs, turn_between, weight_pheromone, AntState,
    MoveDistribution, HEADING_STEPS,
};
pub use params::{
    AltitudeMemory, Sense, Survival, SwarmParams, DEFAULT_DIRECTION_WEIGHTS, DEFAULT_REPRODUCTION,
};

use rand::seq::index;
use rand::Rng;

use crate::landscape::{Cell, GridSpec, LandscapeGrid};
use crate::{Error, Result};

/// Energy below this after a decay counts as exhausted.
const ENERGY_EPSILON: f64 = 1e-9;

/// `P**(n) * (delta_r / delta_max)`, with the ratio taken as zero when
/// `delta_max` is zero.
pub fn reproduction_prob(table: &[f64; 9], n: usize, delta_r: f64, delta_max: f64) -> f64 {
    let ratio = if delta_max > 0.0 { (delta_r / delta_max).clamp(0.0, 1.0) } else { 0.0 };
    table.get(n).copied().unwrap_or(0.0) * ratio
}

/// Spends one step of energy and decides whether the ant lives on.
pub fn decay_and_survive<R: Rng + ?Sized>(
    ant: &mut AntState,
    decay: f64,
    mode: Survival,
    rng: &mut R,
) -> bool {
    ant.energy -= decay;
    if ant.energy <= ENERGY_EPSILON {
        ant.energy = 0.0;
        return false;
    }
    match mode {
        Survival::Deterministic => true,
        Survival::Stochastic => rng.random::<f64>() < ant.energy,
    }
}

/// Everything the colony carries from one step to the next.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    grid: GridSpec,
    ants: Vec<AntState>,
    pheromone: PheromoneField,
    occupancy: Vec<bool>,
    normalizer: AltitudeNormalizer,
    step: u64,
}

impl SwarmState {
    /// A colony with no ants and no pheromone.
    pub fn empty(grid: GridSpec) -> Self {
        Self {
            grid,
            ants: Vec::new(),
            pheromone: PheromoneField::zeros(grid.len()),
            occupancy: vec![false; grid.len()],
            normalizer: AltitudeNormalizer::default(),
            step: 0,
        }
    }

    /// Builds a colony from explicit ants. Fails on overlapping positions.
    pub fn with_ants(grid: GridSpec, ants: Vec<AntState>, pheromone: PheromoneField) -> Result<Self> {
        if pheromone.len() != grid.len() {
            return Err(Error::InvalidGrid("pheromone field does not match grid".into()));
        }
        let mut state = Self { pheromone, ..Self::empty(grid) };
        for ant in ants {
            if ant.cell.col >= grid.width || ant.cell.row >= grid.height {
                return Err(Error::InvalidGrid(format!("ant outside grid at {:?}", ant.cell)));
            }
            let idx = grid.index(ant.cell);
            if state.occupancy[idx] {
                return Err(Error::InvalidGrid(format!("two ants at {:?}", ant.cell)));
            }
            state.occupancy[idx] = true;
            state.ants.push(ant);
        }
        Ok(state)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn ants(&self) -> &[AntState] {
        &self.ants
    }

    pub fn population(&self) -> usize {
        self.ants.len()
    }

    pub fn pheromone(&self) -> &PheromoneField {
        &self.pheromone
    }

    pub fn occupancy(&self) -> &[bool] {
        &self.occupancy
    }

    pub fn normalizer(&self) -> &AltitudeNormalizer {
        &self.normalizer
    }

    /// Direct access to the altitude memory, e.g. to seed it in tests.
    pub fn normalizer_mut(&mut self) -> &mut AltitudeNormalizer {
        &mut self.normalizer
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    /// Applies the altitude-memory policy after the landscape moved.
    pub fn on_environment_change(&mut self, memory: AltitudeMemory) {
        if memory == AltitudeMemory::Reset {
            self.normalizer.reset();
        }
    }

    /// Number of occupied Moore neighbours of `cell`.
    pub fn occupied_neighbors(&self, cell: Cell) -> usize {
        HEADING_STEPS
            .iter()
            .filter(|&&(dc, dr)| self.occupancy[self.grid.index(self.grid.offset(cell, dc, dr))])
            .count()
    }

    /// Checks that occupancy mirrors ant positions and that energies and
    /// pheromone are in range. Meant for tests.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut seen = vec![false; self.grid.len()];
        for ant in &self.ants {
            let idx = self.grid.index(ant.cell);
            if seen[idx] {
                return Err(format!("two ants share {:?}", ant.cell));
            }
            seen[idx] = true;
            if !(ant.energy > 0.0 && ant.energy <= 1.0) {
                return Err(format!("energy {} out of range", ant.energy));
            }
        }
        if seen != self.occupancy {
            return Err("occupancy differs from ant positions".into());
        }
        if let Some(v) = self.pheromone.values().iter().find(|v| v.is_nan() || **v < 0.0) {
            return Err(format!("negative or NaN pheromone {v}"));
        }
        Ok(())
    }

    /// Attempts reproduction for the ant at `index`, which must already have
    /// moved and deposited this step. A child lands on a random free Moore
    /// cell and is appended to the colony.
    pub fn try_reproduce<R: Rng + ?Sized>(
        &mut self,
        index: usize,
        grid: &LandscapeGrid,
        params: &SwarmParams,
        rng: &mut R,
    ) -> Option<AntState> {
        let parent = self.ants[index];
        let n = self.occupied_neighbors(parent.cell);
        if n == 0 {
            return None;
        }
        let z = grid.value(parent.cell);
        let delta_r = self.normalizer.distance(z, params.sense);
        let p = reproduction_prob(&params.reproduction, n, delta_r, self.normalizer.span());
        if rng.random::<f64>() >= p {
            return None;
        }
        let free: Vec<Cell> = HEADING_STEPS
            .iter()
            .map(|&(dc, dr)| self.grid.offset(parent.cell, dc, dr))
            .filter(|c| !self.occupancy[self.grid.index(*c)])
            .collect();
        if free.is_empty() {
            return None;
        }
        let cell = free[rng.random_range(0..free.len())];
        let child = AntState::new(cell, rng.random_range(0..8));
        self.occupancy[self.grid.index(cell)] = true;
        self.ants.push(child);
        Some(child)
    }
}

/// Scatters `floor(density * cells)` ants over distinct random cells with
/// random headings and full energy.
pub fn init_swarm<R: Rng + ?Sized>(grid: &GridSpec, params: &SwarmParams, rng: &mut R) -> Result<SwarmState> {
    grid.validate()?;
    params.validate()?;
    let count = (params.density * grid.len() as f64).floor() as usize;
    if count == 0 {
        return Err(Error::InvalidParams(format!(
            "density {} places no ants on {} cells",
            params.density,
            grid.len()
        )));
    }
    let mut cells = index::sample(rng, grid.len(), count).into_vec();
    cells.sort_unstable();
    let ants = cells
        .into_iter()
        .map(|i| AntState::new(grid.cell(i), rng.random_range(0..8)))
        .collect();
    SwarmState::with_ants(*grid, ants, PheromoneField::zeros(grid.len()))
}

/// One step of the colony on the current landscape.
///
/// Each ant that existed at the start of the step, in creation order, moves,
/// lays pheromone and may reproduce. The field then evaporates once and
/// every ant (newborns included) pays its energy.
pub fn tick<R: Rng + ?Sized>(
    swarm: &mut SwarmState,
    grid: &LandscapeGrid,
    params: &SwarmParams,
    rng: &mut R,
) {
    debug_assert_eq!(grid.spec().len(), swarm.grid.len());
    let spec = swarm.grid;
    let acting = swarm.ants.len();
    for i in 0..acting {
        let ant = swarm.ants[i];
        let dist = transition_probs(&ant, &swarm.pheromone, &swarm.occupancy, &spec, params);
        let moved = step_ant(&ant, &dist, &spec, rng);
        swarm.occupancy[spec.index(ant.cell)] = false;
        swarm.occupancy[spec.index(moved.cell)] = true;
        swarm.ants[i] = moved;

        let z = grid.value(moved.cell);
        swarm.normalizer.observe(z);
        let amount = deposit_amount(z, &swarm.normalizer, params);
        swarm.pheromone.add(spec.index(moved.cell), amount);

        swarm.try_reproduce(i, grid, params, rng);
    }

    evaporate(&mut swarm.pheromone, params.evaporation);

    let mut survivors = Vec::with_capacity(swarm.ants.len());
    for mut ant in std::mem::take(&mut swarm.ants) {
        if decay_and_survive(&mut ant, params.energy_decay, params.survival, rng) {
            survivors.push(ant);
        } else {
            swarm.occupancy[spec.index(ant.cell)] = false;
        }
    }
    swarm.ants = survivors;
    swarm.step += 1;
}

#[cfg(test)]
mod tests;
