use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{Cell, GridSpec};
use crate::{Error, Result};

/// Adds `severity` to every offset component.
pub fn advance_linear(offset: [f64; 2], severity: f64) -> [f64; 2] {
    [offset[0] + severity, offset[1] + severity]
}

/// One step along the circular trajectory; `t` counts prior applications.
/// The sine term drives x and the cosine term drives y.
pub fn advance_circular(offset: [f64; 2], severity: f64, cycle: u32, t: u64) -> Result<[f64; 2]> {
    if cycle == 0 {
        return Err(Error::InvalidDynamics("circular cycle length must be >= 1".into()));
    }
    let phase = 2.0 * PI * (t % cycle as u64) as f64 / cycle as f64;
    Ok([
        offset[0] + severity * phase.sin(),
        offset[1] + severity * phase.cos(),
    ])
}

/// Adds independent `severity * N(0, 1)` noise to each component.
pub fn advance_random<R: Rng + ?Sized>(offset: [f64; 2], severity: f64, rng: &mut R) -> [f64; 2] {
    let n0: f64 = rng.sample(StandardNormal);
    let n1: f64 = rng.sample(StandardNormal);
    [offset[0] + severity * n0, offset[1] + severity * n1]
}

/// `delta(T) = delta(T - 1) + s`. Returns the new offset and environment index.
pub fn advance_severity(delta: f64, severity: f64, index: u64) -> (f64, u64) {
    (delta + severity, index + 1)
}

/// Moves `target` `speed` cells per call along the north-west to south-east
/// diagonal, wrapping on the torus. Fractional motion accumulates in `carry`.
pub fn advance_path(target: Cell, speed: f64, carry: f64, grid: &GridSpec) -> (Cell, f64) {
    let total = carry + speed;
    let whole = total.floor();
    let rest = total - whole;
    let k = whole as i64;
    (grid.offset(target, k, k), rest)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DynamicsKind {
    Static,
    Linear,
    Circular,
    Random,
    SeverityStep,
    Path,
}

impl DynamicsKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DynamicsKind::Static => "static",
            DynamicsKind::Linear => "linear",
            DynamicsKind::Circular => "circular",
            DynamicsKind::Random => "random",
            DynamicsKind::SeverityStep => "severity-step",
            DynamicsKind::Path => "path",
        }
    }
}

impl std::str::FromStr for DynamicsKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "static" => DynamicsKind::Static,
            "linear" => DynamicsKind::Linear,
            "circular" => DynamicsKind::Circular,
            "random" => DynamicsKind::Random,
            "severity-step" | "severity" => DynamicsKind::SeverityStep,
            "path" => DynamicsKind::Path,
            other => return Err(Error::InvalidDynamics(format!("unknown kind `{other}`"))),
        })
    }
}

/// How the environment moves over time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicsSpec {
    pub kind: DynamicsKind,
    /// `S` for linear, circular and random; `s` for severity-step.
    pub severity: f64,
    /// Circular cycle length `C`.
    pub cycle: u32,
    /// Path speed in cells per step.
    pub speed: f64,
    /// Steps between mutations (ignored by path dynamics).
    pub update_frequency: u32,
    /// Offset before the first mutation; for path dynamics, the start point.
    pub start: [f64; 2],
}

impl Default for DynamicsSpec {
    fn default() -> Self {
        Self {
            kind: DynamicsKind::Static,
            severity: 0.0,
            cycle: 1,
            speed: 0.0,
            update_frequency: 1,
            start: [0.0, 0.0],
        }
    }
}

impl DynamicsSpec {
    pub fn validate(&self) -> Result<()> {
        if self.update_frequency == 0 {
            return Err(Error::InvalidDynamics("update frequency must be >= 1".into()));
        }
        if self.kind == DynamicsKind::Circular && self.cycle == 0 {
            return Err(Error::InvalidDynamics("circular cycle length must be >= 1".into()));
        }
        if !(self.speed.is_finite() && self.speed >= 0.0) {
            return Err(Error::InvalidDynamics(format!("speed must be >= 0, got {}", self.speed)));
        }
        if !self.severity.is_finite() || !self.start.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidDynamics("severity and start must be finite".into()));
        }
        Ok(())
    }
}

/// Where the environment currently is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentState {
    /// Offset applied to the base function, per dimension.
    pub offset: [f64; 2],
    /// Path target; `offset` is kept equal to its lattice coordinate.
    pub target: Option<Cell>,
    /// Fractional path motion not yet applied.
    pub carry: f64,
    /// Number of mutations so far (`T`).
    pub index: u64,
    /// Wall-clock step (`t`).
    pub step: u64,
}

impl EnvironmentState {
    pub fn at_offset(offset: [f64; 2]) -> Self {
        Self { offset, target: None, carry: 0.0, index: 0, step: 0 }
    }

    pub fn initial(spec: &DynamicsSpec, grid: &GridSpec) -> Self {
        match spec.kind {
            DynamicsKind::Path => {
                let target = grid.cell_at(spec.start[0], spec.start[1]);
                let (x, y) = grid.coord(target);
                Self { target: Some(target), ..Self::at_offset([x, y]) }
            }
            _ => Self::at_offset(spec.start),
        }
    }

    /// Advances the wall clock by one step and applies any mutation due at
    /// the new step. Returns whether the landscape changed.
    pub fn advance<R: Rng + ?Sized>(
        &mut self,
        spec: &DynamicsSpec,
        grid: &GridSpec,
        rng: &mut R,
    ) -> Result<bool> {
        self.step += 1;
        let changed = match spec.kind {
            DynamicsKind::Static => false,
            DynamicsKind::Path => {
                let from = self.target.unwrap_or_else(|| grid.cell_at(self.offset[0], self.offset[1]));
                let (to, carry) = advance_path(from, spec.speed, self.carry, grid);
                self.carry = carry;
                self.target = Some(to);
                if to != from {
                    let (x, y) = grid.coord(to);
                    self.offset = [x, y];
                    self.index += 1;
                    true
                } else {
                    false
                }
            }
            _ if !self.step.is_multiple_of(spec.update_frequency as u64) => false,
            DynamicsKind::Linear => {
                self.offset = advance_linear(self.offset, spec.severity);
                self.index += 1;
                true
            }
            DynamicsKind::Circular => {
                self.offset = advance_circular(self.offset, spec.severity, spec.cycle, self.index)?;
                self.index += 1;
                true
            }
            DynamicsKind::Random => {
                self.offset = advance_random(self.offset, spec.severity, rng);
                self.index += 1;
                true
            }
            DynamicsKind::SeverityStep => {
                let (delta, index) = advance_severity(self.offset[0], spec.severity, self.index);
                self.offset = [delta, delta];
                self.index = index;
                true
            }
        };
        Ok(changed)
    }
}
