//! Run configuration: a preset plus flat `key=value` overrides.

use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use srs_core::bench::{preset, seeds_from, Scenario, DEFAULT_MASTER_SEED, DEFAULT_SEED_COUNT};
use srs_core::landscape::{BaseFunction, DynamicsKind};
use srs_core::ode::SolverConfig;
use srs_core::swarm::{AltitudeMemory, Sense, Survival};
use srs_core::Execution;

use crate::error::{CliError, Result};

pub const DEFAULT_SCENARIO: &str = "ackley-speed:v=0";

/// The only supported gray-level reference for pheromone rasters.
pub const GRAY_REFERENCE: &str = "field_max";

/// Every accepted key with a one-line description.
pub const KEYS: &[(&str, &str)] = &[
    ("scenario", "preset id, e.g. ackley-speed:v=2 (applied before every other key)"),
    ("seed", "master seed; runs use `seeds` consecutive seeds from it"),
    ("seeds", "number of seeds"),
    ("t_max", "steps per run"),
    ("snapshots", "steps to snapshot, comma separated"),
    ("snapshot_kinds", "any of agents,pheromone,state"),
    ("metrics", "write metrics.csv per seed (true/false)"),
    ("execution", "parallel or sequential grid evaluation"),
    ("gray_reference", "pheromone gray-level reference; only field_max"),
    ("function", "ackley, schaffer-f7, control or flat"),
    ("flat_level", "altitude of the flat function"),
    ("rtol", "control ODE relative tolerance"),
    ("atol", "control ODE absolute tolerance"),
    ("initial_step", "control ODE first step"),
    ("max_steps", "control ODE step budget"),
    ("width", "grid columns"),
    ("height", "grid rows"),
    ("x_min", "domain west edge"),
    ("x_max", "domain east edge"),
    ("y_min", "domain south edge"),
    ("y_max", "domain north edge"),
    ("dynamics", "static, linear, circular, random, severity-step or path"),
    ("severity", "dynamics severity"),
    ("cycle", "circular cycle length"),
    ("speed", "path speed in cells per step"),
    ("update_frequency", "steps between mutations"),
    ("start_x", "initial x offset or path start"),
    ("start_y", "initial y offset or path start"),
    ("beta", "osmotropotactic sensitivity"),
    ("gamma", "inverse sensory capacity"),
    ("eta", "base deposit"),
    ("evaporation", "evaporation rate per step"),
    ("deposit_gain", "altitude-dependent deposit gain"),
    ("energy_decay", "energy lost per step"),
    ("direction_weights", "five turn weights, colon separated"),
    ("reproduction", "nine P**(n) values, colon separated"),
    ("density", "initial fraction of occupied cells"),
    ("sense", "minimize or maximize"),
    ("survival", "stochastic or deterministic"),
    ("memory", "reset or persistent altitude memory across mutations"),
];

/// Keys whose values are lists; sweeps never split them.
pub const LIST_KEYS: &[&str] = &["snapshots", "snapshot_kinds"];

pub fn is_known(key: &str) -> bool {
    KEYS.iter().any(|(k, _)| *k == key)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SnapshotKinds {
    pub agents: bool,
    pub pheromone: bool,
    pub state: bool,
}

impl Default for SnapshotKinds {
    fn default() -> Self {
        Self { agents: true, pheromone: true, state: true }
    }
}

impl SnapshotKinds {
    fn parse(value: &str) -> Result<Self> {
        let mut kinds = Self { agents: false, pheromone: false, state: false };
        for part in split_list(value) {
            match part {
                "agents" => kinds.agents = true,
                "pheromone" => kinds.pheromone = true,
                "state" => kinds.state = true,
                other => return Err(CliError::bad_value("snapshot_kinds", other, "expected agents, pheromone or state")),
            }
        }
        Ok(kinds)
    }

    fn render(&self) -> String {
        let names = [(self.agents, "agents"), (self.pheromone, "pheromone"), (self.state, "state")];
        names.iter().filter(|(on, _)| *on).map(|(_, n)| *n).collect::<Vec<_>>().join(",")
    }
}

/// A fully resolved run request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub master_seed: u64,
    pub seed_count: usize,
    pub snapshots: Vec<u64>,
    pub kinds: SnapshotKinds,
    pub metrics: bool,
    pub execution: Execution,
}

/// Ordered `key=value` pairs from config files and the command line.
pub type Overrides = Vec<(String, String)>;

/// Splits `key=value`, trimming both sides.
pub fn parse_pair(text: &str) -> Option<(String, String)> {
    let (k, v) = text.split_once('=')?;
    let k = k.trim();
    if k.is_empty() {
        return None;
    }
    Some((k.to_string(), v.trim().to_string()))
}

/// Parses a flat config file: one `key=value` per line, `#` comments.
pub fn parse_config_text(text: &str, path: &Path) -> Result<Overrides> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let pair = parse_pair(line).ok_or_else(|| CliError::Syntax {
            path: path.to_path_buf(),
            line: i + 1,
            text: raw.to_string(),
        })?;
        out.push(pair);
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config_text(&text, path)
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: Display,
{
    value.parse().map_err(|e: T::Err| CliError::bad_value(key, value, e))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(CliError::bad_value(key, value, "expected true or false")),
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split([',', ':']).map(str::trim).filter(|s| !s.is_empty())
}

fn parse_array<const N: usize>(key: &str, value: &str) -> Result<[f64; N]> {
    let parts: Vec<f64> = value
        .split(':')
        .map(|p| parse::<f64>(key, p.trim()))
        .collect::<Result<_>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<f64>| CliError::bad_value(key, value, format!("expected {N} values, got {}", v.len())))
}

fn join_array(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(":")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FunctionKind {
    Ackley,
    Schaffer,
    Control,
    Flat,
}

/// Working state while overrides are applied; the base function is
/// assembled at the end so solver keys may come in any order.
struct Builder {
    config: RunConfig,
    function: FunctionKind,
    solver: SolverConfig,
    flat_level: f64,
}

impl Builder {
    fn new(scenario: Scenario) -> Self {
        let (function, solver, flat_level) = match scenario.base {
            BaseFunction::Ackley => (FunctionKind::Ackley, SolverConfig::default(), 0.0),
            BaseFunction::SchafferF7 => (FunctionKind::Schaffer, SolverConfig::default(), 0.0),
            BaseFunction::Control(cfg) => (FunctionKind::Control, cfg, 0.0),
            BaseFunction::Flat(z) => (FunctionKind::Flat, SolverConfig::default(), z),
        };
        Self {
            config: RunConfig {
                scenario,
                master_seed: DEFAULT_MASTER_SEED,
                seed_count: DEFAULT_SEED_COUNT,
                snapshots: Vec::new(),
                kinds: SnapshotKinds::default(),
                metrics: true,
                execution: Execution::default(),
            },
            function,
            solver,
            flat_level,
        }
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        let c = &mut self.config;
        let s = &mut c.scenario;
        match key {
            "scenario" => {}
            "seed" => c.master_seed = parse(key, value)?,
            "seeds" => c.seed_count = parse(key, value)?,
            "t_max" => s.t_max = parse(key, value)?,
            "snapshots" => {
                let mut steps = split_list(value).map(|p| parse::<u64>(key, p)).collect::<Result<Vec<_>>>()?;
                steps.sort_unstable();
                steps.dedup();
                c.snapshots = steps;
            }
            "snapshot_kinds" => c.kinds = SnapshotKinds::parse(value)?,
            "metrics" => c.metrics = parse_bool(key, value)?,
            "execution" => {
                c.execution = match value {
                    "parallel" => Execution::Parallel,
                    "sequential" => Execution::Sequential,
                    _ => return Err(CliError::bad_value(key, value, "expected parallel or sequential")),
                }
            }
            "gray_reference" => {
                if value != GRAY_REFERENCE {
                    return Err(CliError::bad_value(key, value, "only field_max is supported"));
                }
            }
            "function" => {
                self.function = match value {
                    "ackley" => FunctionKind::Ackley,
                    "schaffer-f7" | "schaffer" => FunctionKind::Schaffer,
                    "control" => FunctionKind::Control,
                    "flat" => FunctionKind::Flat,
                    _ => return Err(CliError::bad_value(key, value, "expected ackley, schaffer-f7, control or flat")),
                }
            }
            "flat_level" => self.flat_level = parse(key, value)?,
            "rtol" => self.solver.rtol = parse(key, value)?,
            "atol" => self.solver.atol = parse(key, value)?,
            "initial_step" => self.solver.initial_step = parse(key, value)?,
            "max_steps" => self.solver.max_steps = parse(key, value)?,
            "width" => s.grid.width = parse(key, value)?,
            "height" => s.grid.height = parse(key, value)?,
            "x_min" => s.grid.domain.x_min = parse(key, value)?,
            "x_max" => s.grid.domain.x_max = parse(key, value)?,
            "y_min" => s.grid.domain.y_min = parse(key, value)?,
            "y_max" => s.grid.domain.y_max = parse(key, value)?,
            "dynamics" => s.dynamics.kind = parse::<DynamicsKind>(key, value)?,
            "severity" => s.dynamics.severity = parse(key, value)?,
            "cycle" => s.dynamics.cycle = parse(key, value)?,
            "speed" => s.dynamics.speed = parse(key, value)?,
            "update_frequency" => s.dynamics.update_frequency = parse(key, value)?,
            "start_x" => s.dynamics.start[0] = parse(key, value)?,
            "start_y" => s.dynamics.start[1] = parse(key, value)?,
            "beta" => s.params.beta = parse(key, value)?,
            "gamma" => s.params.gamma = parse(key, value)?,
            "eta" => s.params.eta = parse(key, value)?,
            "evaporation" => s.params.evaporation = parse(key, value)?,
            "deposit_gain" => s.params.deposit_gain = parse(key, value)?,
            "energy_decay" => s.params.energy_decay = parse(key, value)?,
            "direction_weights" => s.params.direction_weights = parse_array(key, value)?,
            "reproduction" => s.params.reproduction = parse_array(key, value)?,
            "density" => s.params.density = parse(key, value)?,
            "sense" => s.params.sense = parse::<Sense>(key, value)?,
            "survival" => s.params.survival = parse::<Survival>(key, value)?,
            "memory" => s.params.memory = parse::<AltitudeMemory>(key, value)?,
            other => return Err(CliError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    fn finish(mut self) -> Result<RunConfig> {
        let c = &mut self.config;
        c.scenario.base = match self.function {
            FunctionKind::Ackley => BaseFunction::Ackley,
            FunctionKind::Schaffer => BaseFunction::SchafferF7,
            FunctionKind::Control => BaseFunction::Control(self.solver),
            FunctionKind::Flat => BaseFunction::Flat(self.flat_level),
        };
        if c.seed_count == 0 {
            return Err(CliError::bad_value("seeds", "0", "at least one seed is required"));
        }
        c.scenario.seeds = seeds_from(c.master_seed, c.seed_count);
        if let Some(&bad) = c.snapshots.iter().find(|&&t| t == 0 || t > c.scenario.t_max) {
            return Err(CliError::bad_value("snapshots", &bad.to_string(), format!("steps run from 1 to t_max={}", c.scenario.t_max)));
        }
        if let BaseFunction::Control(cfg) = &c.scenario.base {
            if !(cfg.rtol > 0.0 && cfg.atol > 0.0 && cfg.initial_step > 0.0 && cfg.max_steps > 0) {
                return Err(CliError::Config("solver tolerances, initial step and step budget must be positive".into()));
            }
        }
        c.scenario.validate()?;
        Ok(self.config)
    }
}

/// Resolves overrides in order on top of the preset named by the last
/// `scenario` key (or the default preset).
pub fn resolve(overrides: &[(String, String)]) -> Result<RunConfig> {
    for (k, _) in overrides {
        if !is_known(k) {
            return Err(CliError::UnknownKey(k.clone()));
        }
    }
    let id = overrides
        .iter()
        .rev()
        .find(|(k, _)| k == "scenario")
        .map_or(DEFAULT_SCENARIO, |(_, v)| v.as_str());
    let mut builder = Builder::new(preset(id)?);
    for (k, v) in overrides {
        builder.apply(k, v)?;
    }
    builder.finish()
}

impl RunConfig {
    /// Every key with its resolved value, in [`KEYS`] order. Feeding the
    /// result back through [`resolve`] reproduces this config exactly.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let s = &self.scenario;
        let p = &s.params;
        let d = &s.dynamics;
        let g = &s.grid;
        let (solver, flat_level) = match s.base {
            BaseFunction::Control(cfg) => (cfg, 0.0),
            BaseFunction::Flat(z) => (SolverConfig::default(), z),
            _ => (SolverConfig::default(), 0.0),
        };
        let execution = match self.execution {
            Execution::Parallel => "parallel",
            Execution::Sequential => "sequential",
        };
        let snapshots = self.snapshots.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
        vec![
            ("scenario", s.id.clone()),
            ("seed", self.master_seed.to_string()),
            ("seeds", self.seed_count.to_string()),
            ("t_max", s.t_max.to_string()),
            ("snapshots", snapshots),
            ("snapshot_kinds", self.kinds.render()),
            ("metrics", self.metrics.to_string()),
            ("execution", execution.to_string()),
            ("gray_reference", GRAY_REFERENCE.to_string()),
            ("function", s.base.name().to_string()),
            ("flat_level", flat_level.to_string()),
            ("rtol", solver.rtol.to_string()),
            ("atol", solver.atol.to_string()),
            ("initial_step", solver.initial_step.to_string()),
            ("max_steps", solver.max_steps.to_string()),
            ("width", g.width.to_string()),
            ("height", g.height.to_string()),
            ("x_min", g.domain.x_min.to_string()),
            ("x_max", g.domain.x_max.to_string()),
            ("y_min", g.domain.y_min.to_string()),
            ("y_max", g.domain.y_max.to_string()),
            ("dynamics", d.kind.as_str().to_string()),
            ("severity", d.severity.to_string()),
            ("cycle", d.cycle.to_string()),
            ("speed", d.speed.to_string()),
            ("update_frequency", d.update_frequency.to_string()),
            ("start_x", d.start[0].to_string()),
            ("start_y", d.start[1].to_string()),
            ("beta", p.beta.to_string()),
            ("gamma", p.gamma.to_string()),
            ("eta", p.eta.to_string()),
            ("evaporation", p.evaporation.to_string()),
            ("deposit_gain", p.deposit_gain.to_string()),
            ("energy_decay", p.energy_decay.to_string()),
            ("direction_weights", join_array(&p.direction_weights)),
            ("reproduction", join_array(&p.reproduction)),
            ("density", p.density.to_string()),
            ("sense", p.sense.as_str().to_string()),
            ("survival", p.survival.as_str().to_string()),
            ("memory", p.memory.as_str().to_string()),
        ]
    }
}
