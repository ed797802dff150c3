use super::*;
use crate::landscape::{Domain2D, LandscapeGrid};
use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(n: usize) -> GridSpec {
    GridSpec::new(n, n, Domain2D::square(0.0, 1.0).unwrap()).unwrap()
}

fn flat(spec: GridSpec, z: f64) -> LandscapeGrid {
    LandscapeGrid::from_values(spec, vec![z; spec.len()]).unwrap()
}

fn ant(col: usize, row: usize) -> AntState {
    AntState::new(Cell::new(col, row), 0)
}

#[test]
fn reproduction_table_values() {
    let t = DEFAULT_REPRODUCTION;
    assert_eq!(reproduction_prob(&t, 4, 2.0, 2.0), 1.0);
    assert_eq!(reproduction_prob(&t, 0, 2.0, 2.0), 0.0);
    assert_eq!(reproduction_prob(&t, 8, 2.0, 2.0), 0.0);
    assert_abs_diff_eq!(reproduction_prob(&t, 3, 1.0, 2.0), 0.375, epsilon = 1e-15);
    assert_eq!(reproduction_prob(&t, 4, 0.0, 0.0), 0.0);
}

#[test]
fn isolated_ant_never_reproduces() {
    let g = spec(7);
    let land = LandscapeGrid::from_values(g, (0..49).map(f64::from).collect()).unwrap();
    let mut s = SwarmState::with_ants(g, vec![ant(3, 3)], PheromoneField::zeros(49)).unwrap();
    s.normalizer.observe(0.0);
    s.normalizer.observe(48.0);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        assert!(s.try_reproduce(0, &land, &SwarmParams::default(), &mut rng).is_none());
    }
    assert_eq!(s.population(), 1);
}

#[test]
fn certain_reproduction_fills_only_free_cell() {
    let g = spec(5);
    let land = flat(g, 0.0);
    // parent at (2, 2), all neighbours but NW (1, 1) taken, then relax to n=4
    let mut ants = vec![ant(2, 2)];
    let taken = [(2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3), (1, 2)];
    ants.extend(taken.iter().map(|&(c, r)| ant(c, r)));
    let mut s = SwarmState::with_ants(g, ants, PheromoneField::zeros(25)).unwrap();
    s.normalizer.observe(0.0);
    s.normalizer.observe(10.0);
    // n = 7 -> P** = 0.25; force a certain table entry instead
    let params = SwarmParams {
        reproduction: [0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0],
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let child = s.try_reproduce(0, &land, &params, &mut rng).unwrap();
    assert_eq!(child.cell, Cell::new(1, 1));
    assert_eq!(child.energy, 1.0);
    assert_eq!(s.population(), 9);
    s.check_invariants().unwrap();
    // no free neighbour left
    assert!(s.try_reproduce(0, &land, &params, &mut rng).is_none());
}

#[test]
fn reproduction_frequency_monte_carlo() {
    let g = spec(5);
    let mut vals = vec![2.0; 25];
    vals[g.index(Cell::new(2, 2))] = 1.0;
    let land = LandscapeGrid::from_values(g, vals).unwrap();
    let ants = vec![ant(2, 2), ant(2, 1), ant(3, 2), ant(1, 3)];
    let mut base = SwarmState::with_ants(g, ants, PheromoneField::zeros(25)).unwrap();
    base.normalizer.observe(0.0);
    base.normalizer.observe(2.0);
    // n = 3, minimizing, ratio |1 - 2| / 2 = 0.5 -> P* = 0.375
    let params = SwarmParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let trials = 10_000;
    let mut spawned = 0;
    for _ in 0..trials {
        let mut s = base.clone();
        if s.try_reproduce(0, &land, &params, &mut rng).is_some() {
            spawned += 1;
        }
    }
    let p = 0.375;
    let sd = (trials as f64 * p * (1.0 - p)).sqrt();
    assert!((spawned as f64 - p * trials as f64).abs() <= 3.0 * sd, "spawned {spawned}");
}

#[test]
fn survival_rules() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut a = ant(0, 0);
    for _ in 0..6 {
        a.energy -= 0.1;
    }
    // seventh step leaves 0.3 energy, which is the survival probability
    let mut trials = 0;
    let mut alive = 0;
    for _ in 0..20_000 {
        let mut b = a;
        trials += 1;
        if decay_and_survive(&mut b, 0.1, Survival::Stochastic, &mut rng) {
            alive += 1;
            assert_abs_diff_eq!(b.energy, 0.3, epsilon = 1e-12);
        }
    }
    let sd = (trials as f64 * 0.3 * 0.7).sqrt();
    assert!((alive as f64 - 0.3 * trials as f64).abs() <= 3.0 * sd);

    let mut full = ant(0, 0);
    assert!(!decay_and_survive(&mut full, 1.0, Survival::Stochastic, &mut rng));
    let mut full = ant(0, 0);
    assert!(!decay_and_survive(&mut full, 1.0, Survival::Deterministic, &mut rng));
}

#[test]
fn survival_frequency_at_half_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let trials = 10_000;
    let mut alive = 0;
    for _ in 0..trials {
        let mut a = AntState { energy: 0.6, ..ant(0, 0) };
        if decay_and_survive(&mut a, 0.1, Survival::Stochastic, &mut rng) {
            alive += 1;
        }
    }
    let sd = (trials as f64 * 0.25).sqrt();
    assert!((alive as f64 - 0.5 * trials as f64).abs() <= 3.0 * sd, "alive {alive}");
}

#[test]
fn deterministic_survival_lasts_exactly_ten_steps() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut a = ant(0, 0);
    let mut steps = 0;
    while decay_and_survive(&mut a, 0.1, Survival::Deterministic, &mut rng) {
        steps += 1;
    }
    assert_eq!(steps, 9);
}

#[test]
fn init_counts_and_positions() {
    let g = GridSpec::new(100, 100, Domain2D::square(-2.0, 2.0).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = init_swarm(&g, &SwarmParams::default(), &mut rng).unwrap();
    assert_eq!(s.population(), 3333);
    s.check_invariants().unwrap();
    assert!(s.ants().iter().all(|a| a.energy == 1.0 && a.heading < 8));
    assert_eq!(s.pheromone().total(), 0.0);
    assert!(s.normalizer().is_empty());

    let full = SwarmParams { density: 1.0, ..Default::default() };
    let s = init_swarm(&g, &full, &mut rng).unwrap();
    assert!(s.occupancy().iter().all(|&o| o));

    let over = SwarmParams { density: 1.2, ..Default::default() };
    assert!(init_swarm(&g, &over, &mut rng).is_err());
    let none = SwarmParams { density: 0.0, ..Default::default() };
    assert!(init_swarm(&g, &none, &mut rng).is_err());
}

#[test]
fn empty_tick_only_evaporates() {
    let g = spec(4);
    let field = PheromoneField::from_values(vec![1.0; 16]);
    let mut s = SwarmState::with_ants(g, vec![], field).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    tick(&mut s, &flat(g, 0.0), &SwarmParams::default(), &mut rng);
    assert_eq!(s.population(), 0);
    assert!(s.pheromone().values().iter().all(|&v| (v - 0.985).abs() < 1e-15));
    assert_eq!(s.step(), 1);
}

#[test]
fn single_ant_on_flat_field_lays_eta() {
    let g = spec(9);
    let params = SwarmParams { evaporation: 0.0, survival: Survival::Deterministic, ..Default::default() };
    let mut s = SwarmState::with_ants(g, vec![ant(4, 4)], PheromoneField::zeros(81)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let land = flat(g, 1.5);
    let mut expected = vec![0.0; 81];
    for _ in 0..5 {
        tick(&mut s, &land, &params, &mut rng);
        expected[g.index(s.ants()[0].cell)] += params.eta;
    }
    for (a, b) in s.pheromone().values().iter().zip(&expected) {
        assert_abs_diff_eq!(*a, *b, epsilon = 1e-15);
    }
}

#[test]
fn ticks_are_reproducible() {
    let g = spec(20);
    let land = LandscapeGrid::from_values(g, (0..400).map(|i| ((i * 37) % 23) as f64).collect()).unwrap();
    let params = SwarmParams { density: 0.3, ..Default::default() };
    let run = |seed: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = init_swarm(&g, &params, &mut rng).unwrap();
        let mut trace = Vec::new();
        for _ in 0..30 {
            tick(&mut s, &land, &params, &mut rng);
            trace.push((s.population(), s.pheromone().total().to_bits()));
        }
        (trace, s)
    };
    let (a, sa) = run(1);
    let (b, sb) = run(1);
    let (c, _) = run(2);
    assert_eq!(a, b);
    assert_eq!(sa, sb);
    assert_ne!(a, c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tick_invariants(seed in any::<u64>(), density in 0.05f64..0.2, flat_land in any::<bool>()) {
        let g = spec(10);
        let params = SwarmParams { density, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let land = if flat_land {
            flat(g, 2.0)
        } else {
            LandscapeGrid::from_values(g, (0..100).map(|_| rand::Rng::random::<f64>(&mut rng) * 5.0).collect()).unwrap()
        };
        let mut s = init_swarm(&g, &params, &mut rng).unwrap();
        for _ in 0..50 {
            let before = s.pheromone().total();
            let n = s.population();
            if n > 0 {
                let dist = transition_probs(&s.ants()[0], s.pheromone(), s.occupancy(), &g, &params);
                let p = dist.probabilities();
                let total: f64 = p.iter().sum::<f64>() + dist.stay_probability();
                prop_assert!((total - 1.0).abs() < 1e-12);
                prop_assert!(p.iter().all(|&x| x >= 0.0));
            }
            tick(&mut s, &land, &params, &mut rng);
            prop_assert!(s.check_invariants().is_ok(), "{:?}", s.check_invariants());
            // deposits come from at most n acting ants
            let gained = s.pheromone().total() - (1.0 - params.evaporation) * before;
            prop_assert!(gained <= n as f64 * (params.eta + params.deposit_gain) + 1e-9);
            if flat_land {
                prop_assert!(gained <= n as f64 * params.eta * (1.0 - params.evaporation) + 1e-9);
            }
        }
    }

    #[test]
    fn higher_pheromone_never_less_likely(s1 in 0.0f64..50.0, extra in 0.0f64..50.0) {
        let g = spec(5);
        let params = SwarmParams { direction_weights: [1.0; 5], ..Default::default() };
        let mut sigma = vec![0.0; 25];
        sigma[g.index(Cell::new(3, 2))] = s1 + extra; // east
        sigma[g.index(Cell::new(1, 2))] = s1; // west
        let field = PheromoneField::from_values(sigma);
        let dist = transition_probs(&ant(2, 2), &field, &[false; 25], &g, &params);
        let p = dist.probabilities();
        prop_assert!(p[2] >= p[6]);
    }
}
