//! JSON state dumps that the `render` verb can turn back into rasters.

use std::path::Path;

use serde::{Deserialize, Serialize};
use srs_core::bench::Simulation;
use srs_core::swarm::AntState;

use crate::error::{CliError, Result};
use crate::render::{render_agents, render_pheromone, Raster};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDump {
    pub scenario: String,
    pub seed: u64,
    pub t: u64,
    pub width: usize,
    pub height: usize,
    pub ants: Vec<AntState>,
    /// Row-major, north row first.
    pub pheromone: Vec<f64>,
}

impl StateDump {
    pub fn capture(sim: &Simulation) -> Self {
        let grid = sim.scenario().grid;
        Self {
            scenario: sim.scenario().id.clone(),
            seed: sim.seed(),
            t: sim.t(),
            width: grid.width,
            height: grid.height,
            ants: sim.swarm().ants().to_vec(),
            pheromone: sim.swarm().pheromone().values().to_vec(),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let dump: Self = serde_json::from_str(&text).map_err(|source| CliError::State { path: path.into(), source })?;
        dump.check().map_err(|msg| CliError::Config(format!("{}: {msg}", path.display())))?;
        Ok(dump)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(self).map_err(|source| CliError::State { path: path.into(), source })?;
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))
    }

    fn check(&self) -> std::result::Result<(), String> {
        let cells = self.width * self.height;
        if cells == 0 || self.pheromone.len() != cells {
            return Err(format!("pheromone has {} values for a {}x{} grid", self.pheromone.len(), self.width, self.height));
        }
        if self.pheromone.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err("pheromone must be finite and nonnegative".into());
        }
        if let Some(a) = self.ants.iter().find(|a| a.cell.col >= self.width || a.cell.row >= self.height) {
            return Err(format!("ant at {:?} lies outside the grid", a.cell));
        }
        Ok(())
    }

    pub fn occupancy(&self) -> Vec<bool> {
        let mut occ = vec![false; self.width * self.height];
        for a in &self.ants {
            occ[a.cell.row * self.width + a.cell.col] = true;
        }
        occ
    }

    pub fn agents_raster(&self) -> Raster {
        render_agents(&self.occupancy(), self.width, self.height)
    }

    pub fn pheromone_raster(&self) -> Raster {
        render_pheromone(&self.pheromone, self.width, self.height)
    }
}
