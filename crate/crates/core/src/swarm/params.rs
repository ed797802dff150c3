use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Whether the colony seeks low or high altitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        }
    }

    /// Whether `a` is strictly better than `b`.
    #[inline]
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Minimize => a < b,
            Sense::Maximize => a > b,
        }
    }
}

impl std::str::FromStr for Sense {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" | "minimize" => Ok(Sense::Minimize),
            "max" | "maximize" => Ok(Sense::Maximize),
            other => Err(Error::InvalidParams(format!("unknown sense `{other}`"))),
        }
    }
}

/// How energy turns into death.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Survival {
    /// Survive each step with probability equal to the remaining energy.
    Stochastic,
    /// Die only once energy is exhausted.
    Deterministic,
}

impl std::str::FromStr for Survival {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stochastic" => Ok(Survival::Stochastic),
            "deterministic" => Ok(Survival::Deterministic),
            other => Err(Error::InvalidParams(format!("unknown survival mode `{other}`"))),
        }
    }
}

impl Survival {
    pub fn as_str(self) -> &'static str {
        match self {
            Survival::Stochastic => "stochastic",
            Survival::Deterministic => "deterministic",
        }
    }
}

/// What happens to the colony's altitude memory when the landscape moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AltitudeMemory {
    /// Keep the extremes seen since the start of the run.
    Persistent,
    /// Forget them at every environment mutation.
    Reset,
}

impl AltitudeMemory {
    pub fn as_str(self) -> &'static str {
        match self {
            AltitudeMemory::Persistent => "persistent",
            AltitudeMemory::Reset => "reset",
        }
    }
}

impl std::str::FromStr for AltitudeMemory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "persistent" => Ok(AltitudeMemory::Persistent),
            "reset" => Ok(AltitudeMemory::Reset),
            other => Err(Error::InvalidParams(format!("unknown altitude memory `{other}`"))),
        }
    }
}

/// Default turn penalties, indexed by heading change in 45 degree units.
pub const DEFAULT_DIRECTION_WEIGHTS: [f64; 5] = [1.0, 1.0 / 2.0, 1.0 / 4.0, 1.0 / 12.0, 1.0 / 20.0];

/// Default reproduction probability by number of occupied Moore neighbours.
pub const DEFAULT_REPRODUCTION: [f64; 9] = [0.0, 0.25, 0.5, 0.75, 1.0, 0.75, 0.5, 0.25, 0.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwarmParams {
    /// Osmotropotaxic sensitivity.
    pub beta: f64,
    /// Inverse sensory capacity.
    pub gamma: f64,
    /// Base deposit per step.
    pub eta: f64,
    /// Fraction of pheromone lost per step.
    pub evaporation: f64,
    /// Extra deposit for reaching the best altitude seen.
    pub deposit_gain: f64,
    /// Energy lost per step.
    pub energy_decay: f64,
    pub direction_weights: [f64; 5],
    pub reproduction: [f64; 9],
    /// Initial fraction of cells holding an ant.
    pub density: f64,
    pub sense: Sense,
    pub survival: Survival,
    pub memory: AltitudeMemory,
}

impl Default for SwarmParams {
    fn default() -> Self {
        Self {
            beta: 3.5,
            gamma: 0.2,
            eta: 0.07,
            evaporation: 0.015,
            deposit_gain: 1.93,
            energy_decay: 0.1,
            direction_weights: DEFAULT_DIRECTION_WEIGHTS,
            reproduction: DEFAULT_REPRODUCTION,
            density: 1.0 / 3.0,
            sense: Sense::Minimize,
            survival: Survival::Stochastic,
            memory: AltitudeMemory::Reset,
        }
    }
}

impl SwarmParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        for (name, v) in [
            ("beta", self.beta),
            ("gamma", self.gamma),
            ("eta", self.eta),
            ("deposit_gain", self.deposit_gain),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be finite and >= 0, got {v}"));
            }
        }
        if !(0.0..1.0).contains(&self.evaporation) {
            return bad(format!("evaporation must lie in [0, 1), got {}", self.evaporation));
        }
        if !(self.energy_decay > 0.0 && self.energy_decay <= 1.0) {
            return bad(format!("energy decay must lie in (0, 1], got {}", self.energy_decay));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return bad(format!("density must lie in [0, 1], got {}", self.density));
        }
        let w = &self.direction_weights;
        if !(w[4] > 0.0 && w.windows(2).all(|p| p[0] >= p[1]) && w.iter().all(|v| v.is_finite())) {
            return bad(format!("direction weights must be positive and non-increasing: {w:?}"));
        }
        let r = &self.reproduction;
        if r.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return bad(format!("reproduction probabilities must lie in [0, 1]: {r:?}"));
        }
        if r[0] != 0.0 || r[8] != 0.0 || r[4] != 1.0 || (0..9).any(|n| r[n] != r[8 - n]) {
            return bad(format!("reproduction table must be symmetric with P(0)=P(8)=0, P(4)=1: {r:?}"));
        }
        Ok(())
    }

    /// Turn weight for a heading change of `turn` (0..=4) steps of 45 degrees.
    pub fn direction_weight(&self, turn: usize) -> Result<f64> {
        self.direction_weights
            .get(turn)
            .copied()
            .ok_or_else(|| Error::InvalidParams(format!("heading change {turn} outside 0..=4")))
    }
}
