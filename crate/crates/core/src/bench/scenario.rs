use serde::{Deserialize, Serialize};

use crate::landscape::{BaseFunction, Domain2D, DynamicsKind, DynamicsSpec, GridSpec};
use crate::ode::SolverConfig;
use crate::swarm::{Sense, SwarmParams};
use crate::{Error, Result};

pub const DEFAULT_MASTER_SEED: u64 = 1;
pub const DEFAULT_SEED_COUNT: usize = 10;

/// `count` consecutive seeds starting at `master`.
pub fn seeds_from(master: u64, count: usize) -> Vec<u64> {
    (0..count as u64).map(|i| master.wrapping_add(i)).collect()
}

/// A fully resolved experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub base: BaseFunction,
    pub grid: GridSpec,
    pub dynamics: DynamicsSpec,
    pub params: SwarmParams,
    pub t_max: u64,
    pub seeds: Vec<u64>,
}

impl Scenario {
    pub fn sense(&self) -> Sense {
        self.params.sense
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.dynamics.validate()?;
        self.params.validate()?;
        if self.t_max == 0 {
            return Err(Error::InvalidScenario("t_max must be >= 1".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidScenario("at least one seed is required".into()));
        }
        Ok(())
    }
}

const SPEEDS: [f64; 8] = [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0];
const SEVERITIES: [f64; 6] = [0.1, 0.2, 0.3, 0.5, 1.0, 1.5];
const FREQUENCIES: [f64; 4] = [50.0, 25.0, 10.0, 5.0];
const DOC_SEVERITIES: [f64; 2] = [0.1, 1.0];

struct Family {
    name: &'static str,
    key: &'static str,
    values: &'static [f64],
    default: f64,
}

const FAMILIES: [Family; 4] = [
    Family { name: "ackley-speed", key: "v", values: &SPEEDS, default: 0.0 },
    Family { name: "schaffer-severity", key: "s", values: &SEVERITIES, default: 0.1 },
    Family { name: "schaffer-frequency", key: "uf", values: &FREQUENCIES, default: 50.0 },
    Family { name: "doc", key: "s", values: &DOC_SEVERITIES, default: 0.1 },
];

/// Every concrete preset id.
pub fn catalog() -> Vec<String> {
    FAMILIES
        .iter()
        .flat_map(|f| f.values.iter().map(move |v| format!("{}:{}={}", f.name, f.key, v)))
        .collect()
}

fn square_grid(lo: f64, hi: f64) -> GridSpec {
    GridSpec { width: 100, height: 100, domain: Domain2D { x_min: lo, x_max: hi, y_min: lo, y_max: hi } }
}

/// Resolves a catalog id such as `ackley-speed:v=2` or `doc:s=1`. A bare
/// family name picks its default parameter.
pub fn preset(name: &str) -> Result<Scenario> {
    let unknown = || Error::UnknownPreset(name.to_string());
    let (family_name, arg) = match name.split_once(':') {
        Some((f, a)) => (f, Some(a)),
        None => (name, None),
    };
    let family = FAMILIES.iter().find(|f| f.name == family_name).ok_or_else(unknown)?;
    let value = match arg {
        None => family.default,
        Some(a) => {
            let (key, raw) = a.split_once('=').ok_or_else(unknown)?;
            if key != family.key {
                return Err(unknown());
            }
            let v: f64 = raw.parse().map_err(|_| unknown())?;
            *family.values.iter().find(|&&c| (c - v).abs() < 1e-9).ok_or_else(unknown)?
        }
    };
    let id = format!("{}:{}={}", family.name, family.key, value);
    let seeds = seeds_from(DEFAULT_MASTER_SEED, DEFAULT_SEED_COUNT);
    let maximize = SwarmParams { sense: Sense::Maximize, ..Default::default() };
    let stepped = |severity: f64, uf: u32| DynamicsSpec {
        kind: DynamicsKind::SeverityStep,
        severity,
        update_frequency: uf,
        ..Default::default()
    };
    let scenario = match family.name {
        "ackley-speed" => Scenario {
            id,
            base: BaseFunction::Ackley,
            grid: square_grid(-2.0, 2.0),
            dynamics: DynamicsSpec { kind: DynamicsKind::Path, speed: value, ..Default::default() },
            params: SwarmParams::default(),
            t_max: 100,
            seeds,
        },
        "schaffer-severity" => Scenario {
            id,
            base: BaseFunction::SchafferF7,
            grid: square_grid(-1.0, 1.0),
            dynamics: stepped(value, 50),
            params: maximize,
            t_max: 400,
            seeds,
        },
        "schaffer-frequency" => Scenario {
            id,
            base: BaseFunction::SchafferF7,
            grid: square_grid(-1.0, 1.0),
            dynamics: stepped(1.0, value as u32),
            params: maximize,
            t_max: 400,
            seeds,
        },
        "doc" => Scenario {
            id,
            base: BaseFunction::Control(SolverConfig::default()),
            grid: square_grid(-5.0, 5.0),
            dynamics: stepped(value, 50),
            params: SwarmParams { energy_decay: 0.01, ..maximize },
            t_max: 400,
            seeds,
        },
        _ => unreachable!(),
    };
    scenario.validate()?;
    Ok(scenario)
}
