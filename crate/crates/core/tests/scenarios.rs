use srs_core::bench::{catalog, preset, run_scenario, run_seed, Scenario};
use srs_core::metrics::{read_csv, write_csv};
use srs_core::Execution;

fn short(name: &str, t_max: u64) -> Scenario {
    Scenario { t_max, seeds: vec![7, 8, 9], ..preset(name).unwrap() }
}

#[test]
fn every_catalog_entry_resolves_and_validates() {
    let ids = catalog();
    assert_eq!(ids.len(), 20);
    for id in ids {
        let s = preset(&id).unwrap();
        assert_eq!(s.id, id);
        s.validate().unwrap();
    }
}

#[test]
fn execution_mode_does_not_change_results() {
    for name in ["ackley-speed:v=2", "schaffer-frequency:uf=5"] {
        let s = short(name, 30);
        let seq = run_scenario(&s, Execution::Sequential).unwrap();
        let par = run_scenario(&s, Execution::Parallel).unwrap();
        for (a, b) in seq.runs.iter().zip(&par.runs) {
            assert_eq!(a.seed, b.seed);
            assert_eq!(a.records.len(), b.records.len());
            assert!(a.records.iter().zip(&b.records).all(|(x, y)| x.same_as(y)), "{name} seed {}", a.seed);
        }
    }
}

#[test]
fn metrics_csv_round_trips_bit_for_bit() {
    let run = run_seed(&short("schaffer-severity:s=0.5", 40), 3, Execution::Parallel).unwrap();
    let mut first = Vec::new();
    write_csv(&mut first, &run.records).unwrap();
    let back = read_csv(first.as_slice()).unwrap();
    assert!(back.iter().zip(&run.records).all(|(x, y)| x.same_as(y)));
    let mut second = Vec::new();
    write_csv(&mut second, &back).unwrap();
    assert_eq!(first, second);
}

#[test]
fn records_are_consecutive_and_stop_at_extinction() {
    let s = short("ackley-speed:v=10", 100);
    for run in run_scenario(&s, Execution::Parallel).unwrap().runs {
        assert!(run.records.iter().enumerate().all(|(i, r)| r.t == i as u64 + 1));
        match run.extinct_at {
            Some(t) => {
                assert_eq!(run.records.last().unwrap().t, t);
                assert_eq!(run.records.last().unwrap().population, 0);
            }
            None => assert_eq!(run.records.len() as u64, s.t_max),
        }
        assert!(run.records.iter().rev().skip(1).all(|r| r.population > 0));
    }
}
