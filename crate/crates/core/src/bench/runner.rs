use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Scenario;
use crate::exec::{map_indexed, Execution};
use crate::landscape::{rebuild_grid, EnvironmentState, LandscapeGrid};
use crate::metrics::{record_step, RunSummary, StepRecord};
use crate::swarm::{init_swarm, tick, SwarmState};
use crate::Result;

const SWARM_STREAM: u64 = 0;
const ENVIRONMENT_STREAM: u64 = 1;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// What happened in one call to [`Simulation::step`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub record: StepRecord,
    pub mutated: bool,
}

/// One seeded run, advanced a step at a time.
///
/// At each step the environment advances first (rebuilding the grid and
/// applying the altitude-memory policy when it changed), then the colony
/// ticks and the step is recorded.
#[derive(Debug, Clone)]
pub struct Simulation {
    scenario: Scenario,
    seed: u64,
    exec: Execution,
    env: EnvironmentState,
    grid: LandscapeGrid,
    swarm: SwarmState,
    swarm_rng: ChaCha8Rng,
    env_rng: ChaCha8Rng,
}

impl Simulation {
    pub fn new(scenario: &Scenario, seed: u64, exec: Execution) -> Result<Self> {
        scenario.validate()?;
        let env = EnvironmentState::initial(&scenario.dynamics, &scenario.grid);
        let grid = rebuild_grid(&scenario.grid, &scenario.base, &env, exec)?;
        let mut swarm_rng = stream(seed, SWARM_STREAM);
        let swarm = init_swarm(&scenario.grid, &scenario.params, &mut swarm_rng)?;
        Ok(Self {
            scenario: scenario.clone(),
            seed,
            exec,
            env,
            grid,
            swarm,
            swarm_rng,
            env_rng: stream(seed, ENVIRONMENT_STREAM),
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Steps completed so far.
    pub fn t(&self) -> u64 {
        self.env.step
    }

    pub fn env(&self) -> &EnvironmentState {
        &self.env
    }

    pub fn grid(&self) -> &LandscapeGrid {
        &self.grid
    }

    pub fn swarm(&self) -> &SwarmState {
        &self.swarm
    }

    pub fn is_extinct(&self) -> bool {
        self.swarm.population() == 0
    }

    pub fn step(&mut self) -> Result<StepOutcome> {
        let s = &self.scenario;
        let mutated = self.env.advance(&s.dynamics, &s.grid, &mut self.env_rng)?;
        if mutated {
            self.grid = rebuild_grid(&s.grid, &s.base, &self.env, self.exec)?;
            self.swarm.on_environment_change(s.params.memory);
        }
        tick(&mut self.swarm, &self.grid, &s.params, &mut self.swarm_rng);
        let record = record_step(self.env.step, &self.swarm, &self.grid, s.params.sense);
        Ok(StepOutcome { record, mutated })
    }
}

/// Runs one seed to `t_max`, stopping early if the colony dies out.
pub fn run_seed(scenario: &Scenario, seed: u64, exec: Execution) -> Result<RunSummary> {
    run_seed_with(scenario, seed, exec, |_, _| Ok(()))
}

/// [`run_seed`] with a hook called after every step, e.g. for snapshots.
/// An error from the hook stops the run.
pub fn run_seed_with<F, E>(scenario: &Scenario, seed: u64, exec: Execution, mut observe: F) -> Result<RunSummary, E>
where
    F: FnMut(&Simulation, &StepOutcome) -> Result<(), E>,
    E: From<crate::Error>,
{
    let mut sim = Simulation::new(scenario, seed, exec)?;
    let mut records = Vec::with_capacity(scenario.t_max as usize);
    let mut mutations = Vec::new();
    let mut extinct_at = None;
    while sim.t() < scenario.t_max {
        let out = sim.step()?;
        if out.mutated {
            mutations.push(out.record.t);
        }
        observe(&sim, &out)?;
        records.push(out.record);
        if sim.is_extinct() {
            extinct_at = Some(out.record.t);
            break;
        }
    }
    Ok(RunSummary {
        scenario: scenario.id.clone(),
        seed,
        success_rate: captured_fraction(&records, scenario.t_max),
        records,
        mutations,
        extinct_at,
    })
}

/// Captured steps over the scheduled run length, so steps after an
/// extinction count as misses.
fn captured_fraction(records: &[StepRecord], t_max: u64) -> f64 {
    records.iter().filter(|r| r.captured).count() as f64 / t_max as f64
}

/// Per-seed summaries plus the spread of their success rates.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub scenario: String,
    pub runs: Vec<RunSummary>,
    pub mean_success: f64,
    pub min_success: f64,
    pub max_success: f64,
}

impl ScenarioReport {
    pub fn from_runs(scenario: String, runs: Vec<RunSummary>) -> Self {
        let rates: Vec<f64> = runs.iter().map(|r| r.success_rate).collect();
        let n = rates.len().max(1) as f64;
        Self {
            scenario,
            mean_success: rates.iter().sum::<f64>() / n,
            min_success: rates.iter().copied().fold(f64::INFINITY, f64::min),
            max_success: rates.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            runs,
        }
    }
}

/// Runs every seed of `scenario`. Seeds run in parallel under
/// [`Execution::Parallel`]; the report is the same either way.
pub fn run_scenario(scenario: &Scenario, exec: Execution) -> Result<ScenarioReport> {
    scenario.validate()?;
    let runs = map_indexed(exec, scenario.seeds.len(), |i| {
        run_seed(scenario, scenario.seeds[i], exec)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ScenarioReport::from_runs(scenario.id.clone(), runs))
}
