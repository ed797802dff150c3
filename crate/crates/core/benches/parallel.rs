use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use srs_core::bench::{preset, run_scenario, Scenario};
use srs_core::landscape::{rebuild_grid, Domain2D, EnvironmentState, GridSpec};
use srs_core::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn control_grid(c: &mut Criterion) {
    let doc = preset("doc:s=1").unwrap();
    let spec = GridSpec { width: 40, height: 40, domain: Domain2D::square(-5.0, 5.0).unwrap() };
    let env = EnvironmentState::at_offset([6.0, 6.0]);
    let mut group = c.benchmark_group("control_grid_40x40");
    group.sample_size(10).measurement_time(Duration::from_secs(5));
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| rebuild_grid(&spec, &doc.base, &env, exec).unwrap())
        });
    }
    group.finish();
}

fn seeds(c: &mut Criterion) {
    let scenario = Scenario { t_max: 50, ..preset("ackley-speed:v=1").unwrap() };
    let mut group = c.benchmark_group("ackley_speed_10_seeds");
    group.sample_size(10).measurement_time(Duration::from_secs(5));
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| run_scenario(&scenario, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, control_grid, seeds);
criterion_main!(benches);
