//! The `run`, `sweep` and `render` verbs.

use std::path::{Path, PathBuf};

use srs_core::bench::{run_seed_with, ScenarioReport};
use srs_core::metrics::write_csv;

use crate::config::{resolve, RunConfig, LIST_KEYS};
use crate::error::{CliError, Result};
use crate::output::{
    create_dir, create_file, seed_dir, snapshot_name, write_manifest, write_report, OutputLock, METRICS, SWEEP,
};
use crate::state::StateDump;

/// Runs every seed of `config` into `out`, which must not be locked by
/// another run. With `dry_run` only the manifest is written.
pub fn cmd_run(config: &RunConfig, out: &Path, dry_run: bool) -> Result<Option<ScenarioReport>> {
    let _lock = OutputLock::acquire(out)?;
    run_into(config, out, dry_run)
}

fn run_into(config: &RunConfig, out: &Path, dry_run: bool) -> Result<Option<ScenarioReport>> {
    create_dir(out)?;
    write_manifest(out, config)?;
    if dry_run {
        return Ok(None);
    }
    let scenario = &config.scenario;
    let mut runs = Vec::with_capacity(scenario.seeds.len());
    for &seed in &scenario.seeds {
        let dir = seed_dir(out, seed);
        create_dir(&dir)?;
        let summary = run_seed_with(scenario, seed, config.execution, |sim, _| {
            if config.snapshots.binary_search(&sim.t()).is_ok() {
                write_snapshot(config, &dir, &StateDump::capture(sim))?;
            }
            Ok::<_, CliError>(())
        })?;
        if config.metrics {
            write_csv(create_file(&dir.join(METRICS))?, &summary.records)?;
        }
        eprintln!(
            "{} seed {seed}: success {:.3} over {} steps{}",
            scenario.id,
            summary.success_rate,
            summary.records.len(),
            summary.extinct_at.map_or(String::new(), |t| format!(", extinct at t={t}"))
        );
        runs.push(summary);
    }
    let report = ScenarioReport::from_runs(scenario.id.clone(), runs);
    write_report(out, &report)?;
    Ok(Some(report))
}

fn write_snapshot(config: &RunConfig, dir: &Path, dump: &StateDump) -> Result<()> {
    if config.kinds.agents {
        dump.agents_raster().write(&dir.join(snapshot_name("agents", dump.t, "pgm")))?;
    }
    if config.kinds.pheromone {
        dump.pheromone_raster().write(&dir.join(snapshot_name("pheromone", dump.t, "pgm")))?;
    }
    if config.kinds.state {
        dump.write(&dir.join(snapshot_name("state", dump.t, "json")))?;
    }
    Ok(())
}

/// One swept key and its candidate values.
pub type Axis = (String, Vec<String>);

/// Splits sweep overrides: comma-separated values become axes, everything
/// else (including list-valued keys) is passed through unchanged.
pub fn split_axes(sets: &[(String, String)]) -> (Vec<(String, String)>, Vec<Axis>) {
    let mut fixed = Vec::new();
    let mut axes: Vec<Axis> = Vec::new();
    for (k, v) in sets {
        if LIST_KEYS.contains(&k.as_str()) || !v.contains(',') {
            fixed.push((k.clone(), v.clone()));
        } else {
            let values = v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            axes.retain(|(name, _)| name != k);
            axes.push((k.clone(), values));
        }
    }
    (fixed, axes)
}

/// Cartesian product of the axes, first axis varying slowest.
pub fn combinations(axes: &[Axis]) -> Vec<Vec<(String, String)>> {
    let mut combos = vec![Vec::new()];
    for (key, values) in axes {
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut c = prefix.clone();
                    c.push((key.clone(), v.clone()));
                    c
                })
            })
            .collect();
    }
    combos
}

/// Runs every combination of the swept overrides into `out/combo_NNN`.
/// All combinations are resolved before anything runs.
pub fn cmd_sweep(base: &[(String, String)], axes: &[Axis], out: &Path, dry_run: bool) -> Result<Vec<Option<ScenarioReport>>> {
    if axes.iter().any(|(_, v)| v.is_empty()) {
        return Err(CliError::Config("every swept key needs at least one value".into()));
    }
    let combos = combinations(axes);
    let configs = combos
        .iter()
        .map(|combo| {
            let mut all = base.to_vec();
            all.extend(combo.iter().cloned());
            resolve(&all)
        })
        .collect::<Result<Vec<_>>>()?;
    let _lock = OutputLock::acquire(out)?;
    let mut header = vec!["combo".to_string()];
    header.extend(axes.iter().map(|(k, _)| k.clone()));
    header.extend(["mean_success", "min_success", "max_success", "extinct_runs"].map(String::from));
    let sweep_path = out.join(SWEEP);
    let mut table = csv::Writer::from_writer(create_file(&sweep_path)?);
    table.write_record(&header)?;
    let mut reports = Vec::with_capacity(configs.len());
    for (i, (config, combo)) in configs.iter().zip(&combos).enumerate() {
        let name = format!("combo_{i:03}");
        let report = run_into(config, &out.join(&name), dry_run)?;
        let mut row = vec![name];
        row.extend(combo.iter().map(|(_, v)| v.clone()));
        match &report {
            Some(r) => row.extend([
                r.mean_success.to_string(),
                r.min_success.to_string(),
                r.max_success.to_string(),
                r.runs.iter().filter(|x| x.extinct_at.is_some()).count().to_string(),
            ]),
            None => row.extend(std::iter::repeat_n(String::new(), 4)),
        }
        table.write_record(&row)?;
        reports.push(report);
    }
    table.flush().map_err(|e| CliError::io(sweep_path, e))?;
    Ok(reports)
}

/// Re-renders rasters from state dumps, next to each dump unless `out` is given.
pub fn cmd_render(states: &[PathBuf], out: Option<&Path>) -> Result<Vec<PathBuf>> {
    if states.is_empty() {
        return Err(CliError::Config("render needs at least one state dump".into()));
    }
    let mut written = Vec::new();
    for path in states {
        let dump = StateDump::read(path)?;
        let dir = match out {
            Some(d) => d.to_path_buf(),
            None => path.parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf),
        };
        create_dir(&dir)?;
        let agents = dir.join(snapshot_name("agents", dump.t, "pgm"));
        let pheromone = dir.join(snapshot_name("pheromone", dump.t, "pgm"));
        dump.agents_raster().write(&agents)?;
        dump.pheromone_raster().write(&pheromone)?;
        written.extend([agents, pheromone]);
    }
    Ok(written)
}
