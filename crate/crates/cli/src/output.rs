//! Output-directory layout, lock file and manifest.

use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use srs_core::bench::ScenarioReport;

use crate::config::RunConfig;
use crate::error::{CliError, Result};

pub const LOCK_FILE: &str = ".srs.lock";
pub const MANIFEST: &str = "manifest.txt";
pub const METRICS: &str = "metrics.csv";
pub const AGGREGATE: &str = "aggregate.csv";
pub const RUNS: &str = "runs.csv";
pub const SWEEP: &str = "sweep.csv";

pub fn seed_dir(out: &Path, seed: u64) -> PathBuf {
    out.join(format!("seed_{seed}"))
}

pub fn snapshot_name(kind: &str, t: u64, ext: &str) -> String {
    format!("{kind}_t{t:04}.{ext}")
}

pub fn create_dir(path: &Path) -> Result<()> {
    std::fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}

/// Exclusive claim on an output directory, released on drop.
#[derive(Debug)]
pub struct OutputLock {
    path: PathBuf,
}

impl OutputLock {
    pub fn acquire(out: &Path) -> Result<Self> {
        create_dir(out)?;
        let path = out.join(LOCK_FILE);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
                Ok(Self { path })
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(CliError::Locked(out.to_path_buf())),
            Err(e) => Err(CliError::io(path, e)),
        }
    }
}

impl Drop for OutputLock {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.path);
    }
}

/// Flat `key=value` manifest; it is a valid config file for `--config`.
pub fn manifest_text(config: &RunConfig) -> String {
    let mut text = String::from("# srs run manifest; pass back with --config to reproduce\n");
    let seeds: Vec<String> = config.scenario.seeds.iter().map(|s| s.to_string()).collect();
    text.push_str(&format!("# seed list: {}\n", seeds.join(" ")));
    for (k, v) in config.to_pairs() {
        text.push_str(&format!("{k}={v}\n"));
    }
    text
}

pub fn write_manifest(out: &Path, config: &RunConfig) -> Result<()> {
    let path = out.join(MANIFEST);
    std::fs::write(&path, manifest_text(config)).map_err(|e| CliError::io(path, e))
}

pub fn create_file(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| CliError::io(path, e))
}

#[derive(Serialize)]
struct RunRow {
    seed: u64,
    steps: usize,
    success_rate: f64,
    extinct_at: Option<u64>,
    final_population: usize,
}

#[derive(Serialize)]
struct AggregateRow<'a> {
    scenario: &'a str,
    seeds: usize,
    mean_success: f64,
    min_success: f64,
    max_success: f64,
    extinct_runs: usize,
}

/// `runs.csv` (one row per seed) and `aggregate.csv` (one summary row).
pub fn write_report(out: &Path, report: &ScenarioReport) -> Result<()> {
    let mut runs = csv::Writer::from_writer(create_file(&out.join(RUNS))?);
    for r in &report.runs {
        runs.serialize(RunRow {
            seed: r.seed,
            steps: r.records.len(),
            success_rate: r.success_rate,
            extinct_at: r.extinct_at,
            final_population: r.records.last().map_or(0, |x| x.population),
        })?;
    }
    runs.flush().map_err(|e| CliError::io(out.join(RUNS), e))?;
    let mut agg = csv::Writer::from_writer(create_file(&out.join(AGGREGATE))?);
    agg.serialize(AggregateRow {
        scenario: &report.scenario,
        seeds: report.runs.len(),
        mean_success: report.mean_success,
        min_success: report.min_success,
        max_success: report.max_success,
        extinct_runs: report.runs.iter().filter(|r| r.extinct_at.is_some()).count(),
    })?;
    agg.flush().map_err(|e| CliError::io(out.join(AGGREGATE), e))
}
