//! Per-step measurements and run summaries.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::landscape::LandscapeGrid;
use crate::swarm::{Sense, SwarmState};
use crate::Result;

/// One row of `metrics.csv`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: u64,
    pub population: usize,
    /// Best altitude under any living ant; NaN for an empty colony.
    pub best: f64,
    /// Mean altitude over living ants; NaN for an empty colony.
    pub mean_altitude: f64,
    /// Some ant stands on a cell attaining the grid optimum.
    pub captured: bool,
    pub grid_opt: f64,
}

impl StepRecord {
    /// Field-wise equality that treats NaN markers as equal.
    pub fn same_as(&self, other: &StepRecord) -> bool {
        let same = |a: f64, b: f64| a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan());
        self.t == other.t
            && self.population == other.population
            && same(self.best, other.best)
            && same(self.mean_altitude, other.mean_altitude)
            && self.captured == other.captured
            && same(self.grid_opt, other.grid_opt)
    }
}

/// Measures the colony against the current grid.
pub fn record_step(t: u64, swarm: &SwarmState, grid: &LandscapeGrid, sense: Sense) -> StepRecord {
    let (grid_opt, argopt) = match sense {
        Sense::Minimize => (grid.z_min(), grid.argmin()),
        Sense::Maximize => (grid.z_max(), grid.argmax()),
    };
    let population = swarm.population();
    if population == 0 {
        return StepRecord {
            t,
            population,
            best: f64::NAN,
            mean_altitude: f64::NAN,
            captured: false,
            grid_opt,
        };
    }
    let mut best = grid.value(swarm.ants()[0].cell);
    let mut sum = 0.0;
    for ant in swarm.ants() {
        let z = grid.value(ant.cell);
        if sense.better(z, best) {
            best = z;
        }
        sum += z;
    }
    let occupancy = swarm.occupancy();
    let captured = argopt.iter().any(|&i| occupancy[i]);
    StepRecord { t, population, best, mean_altitude: sum / population as f64, captured, grid_opt }
}

/// Fraction of records with a capture. Zero for no records.
pub fn success_rate(records: &[StepRecord]) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    records.iter().filter(|r| r.captured).count() as f64 / records.len() as f64
}

/// Best altitude per iteration alongside its running best.
#[derive(Debug, Clone, PartialEq)]
pub struct BestSeries {
    pub per_iteration: Vec<f64>,
    /// Running best, restarted at every environment mutation.
    pub cumulative: Vec<f64>,
}

/// Splits the records' `best` column into per-iteration and cumulative
/// series. `mutations` lists the steps at which the environment changed; the
/// cumulative series restarts at those steps.
pub fn best_so_far(records: &[StepRecord], mutations: &[u64], sense: Sense) -> BestSeries {
    let per_iteration: Vec<f64> = records.iter().map(|r| r.best).collect();
    let mut cumulative = Vec::with_capacity(records.len());
    let mut running: Option<f64> = None;
    for r in records {
        if mutations.contains(&r.t) {
            running = None;
        }
        running = match running {
            _ if r.best.is_nan() => running,
            None => Some(r.best),
            Some(prev) if sense.better(r.best, prev) => Some(r.best),
            keep => keep,
        };
        cumulative.push(running.unwrap_or(f64::NAN));
    }
    BestSeries { per_iteration, cumulative }
}

/// Everything measured in one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub scenario: String,
    pub seed: u64,
    pub records: Vec<StepRecord>,
    /// Steps at which the environment mutated.
    pub mutations: Vec<u64>,
    /// Step at which the colony died out, if it did.
    pub extinct_at: Option<u64>,
    /// Captured steps over `t_max`; steps after an extinction are misses.
    pub success_rate: f64,
}

pub const CSV_HEADER: [&str; 6] = ["t", "population", "best", "mean_altitude", "captured", "grid_opt"];

/// Writes records as `metrics.csv`.
pub fn write_csv<W: Write>(out: W, records: &[StepRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads records written by [`write_csv`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<StepRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(csv::Error::from(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("unexpected metrics header {header:?}"),
        ))
        .into());
    }
    Ok(r.deserialize().collect::<std::result::Result<Vec<StepRecord>, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::{Cell, Domain2D, GridSpec};
    use crate::swarm::{AntState, PheromoneField};
    use proptest::prelude::*;

    fn rec(t: u64, best: f64, captured: bool) -> StepRecord {
        StepRecord { t, population: 1, best, mean_altitude: best, captured, grid_opt: 0.0 }
    }

    fn grid3() -> LandscapeGrid {
        let spec = GridSpec::new(3, 3, Domain2D::square(0.0, 1.0).unwrap()).unwrap();
        LandscapeGrid::from_values(spec, vec![4.0, 0.0, 3.0, 2.0, 5.0, 0.0, 1.0, 6.0, 7.0]).unwrap()
    }

    fn swarm_at(grid: &LandscapeGrid, cells: &[(usize, usize)]) -> SwarmState {
        let ants = cells.iter().map(|&(c, r)| AntState::new(Cell::new(c, r), 0)).collect();
        SwarmState::with_ants(*grid.spec(), ants, PheromoneField::zeros(9)).unwrap()
    }

    #[test]
    fn agents_on_argmin_capture() {
        let g = grid3();
        let s = swarm_at(&g, &[(1, 0), (2, 1)]);
        let r = record_step(4, &s, &g, Sense::Minimize);
        assert_eq!(r.best, 0.0);
        assert!(r.captured);
        assert_eq!(r.grid_opt, 0.0);
    }

    #[test]
    fn single_agent_best_equals_mean() {
        let g = grid3();
        let r = record_step(1, &swarm_at(&g, &[(1, 1)]), &g, Sense::Maximize);
        assert_eq!(r.best, r.mean_altitude);
        assert!(!r.captured);
    }

    #[test]
    fn three_agents_by_hand() {
        let g = grid3();
        let s = swarm_at(&g, &[(0, 0), (0, 1), (1, 2)]); // altitudes 4, 2, 6
        let r = record_step(2, &s, &g, Sense::Minimize);
        assert_eq!((r.best, r.mean_altitude, r.captured), (2.0, 4.0, false));
        let r = record_step(2, &s, &g, Sense::Maximize);
        assert_eq!((r.best, r.mean_altitude, r.captured, r.grid_opt), (6.0, 4.0, false, 7.0));
    }

    #[test]
    fn empty_swarm_markers() {
        let g = grid3();
        let r = record_step(9, &swarm_at(&g, &[]), &g, Sense::Minimize);
        assert_eq!(r.population, 0);
        assert!(r.best.is_nan() && r.mean_altitude.is_nan());
        assert!(!r.captured);
    }

    #[test]
    fn success_rate_counts() {
        let all: Vec<_> = (1..=10).map(|t| rec(t, 0.0, true)).collect();
        assert_eq!(success_rate(&all), 1.0);
        let none: Vec<_> = (1..=10).map(|t| rec(t, 1.0, false)).collect();
        assert_eq!(success_rate(&none), 0.0);
        let alt: Vec<_> = (1..=100).map(|t| rec(t, 0.0, t % 2 == 0)).collect();
        assert_eq!(success_rate(&alt), 0.5);
    }

    #[test]
    fn best_series() {
        let improving: Vec<_> = [5.0, 4.0, 2.0].iter().enumerate().map(|(i, &b)| rec(i as u64 + 1, b, false)).collect();
        let s = best_so_far(&improving, &[], Sense::Minimize);
        assert_eq!(s.per_iteration, s.cumulative);

        let recs: Vec<_> = [3.0, 1.0, 2.0].iter().enumerate().map(|(i, &b)| rec(i as u64 + 1, b, false)).collect();
        let s = best_so_far(&recs, &[], Sense::Maximize);
        assert_eq!(s.per_iteration, vec![3.0, 1.0, 2.0]);
        assert_eq!(s.cumulative, vec![3.0, 3.0, 3.0]);
        let s = best_so_far(&recs, &[2, 3], Sense::Maximize);
        assert_eq!(s.cumulative, vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn csv_header_and_nan() {
        let records = vec![
            StepRecord { t: 1, population: 0, best: f64::NAN, mean_altitude: f64::NAN, captured: false, grid_opt: 2.5 },
            StepRecord { t: 2, population: 7, best: 0.1 + 0.2, mean_altitude: 1e-300, captured: true, grid_opt: -3.0 },
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,population,best,mean_altitude,captured,grid_opt\n"));
        let back = read_csv(buf.as_slice()).unwrap();
        assert!(back.iter().zip(&records).all(|(a, b)| a.same_as(b)));
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip(rows in proptest::collection::vec(
            (any::<u32>(), 0usize..10_000, any::<f64>(), any::<f64>(), any::<bool>(), -1e6f64..1e6), 1..40)) {
            let records: Vec<StepRecord> = rows.into_iter().map(|(t, population, best, mean_altitude, captured, grid_opt)| StepRecord {
                t: t as u64, population, best, mean_altitude, captured, grid_opt,
            }).collect();
            let mut buf = Vec::new();
            write_csv(&mut buf, &records).unwrap();
            let back = read_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(back.len(), records.len());
            for (a, b) in back.iter().zip(&records) {
                prop_assert!(a.same_as(b), "{:?} vs {:?}", a, b);
            }
        }

        #[test]
        fn success_rate_in_unit_interval(flags in proptest::collection::vec(any::<bool>(), 1..200)) {
            let recs: Vec<_> = flags.iter().enumerate().map(|(i, &c)| rec(i as u64, 0.0, c)).collect();
            let r = success_rate(&recs);
            prop_assert!((0.0..=1.0).contains(&r));
            let mut rev = recs.clone();
            rev.reverse();
            prop_assert_eq!(r, success_rate(&rev));
        }
    }
}
