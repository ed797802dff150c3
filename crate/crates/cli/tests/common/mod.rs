//! Independent reference implementations used as test oracles. They are
//! written directly from the formulas, without sharing code with the crates
//! under test.

#![allow(dead_code)]

use std::f64::consts::{E, PI};

/// Ackley in two dimensions, minimum at `a`.
pub fn ackley(x: f64, y: f64, a: [f64; 2]) -> f64 {
    let dx = x - a[0];
    let dy = y - a[1];
    let rms = ((dx * dx + dy * dy) / 2.0).sqrt();
    let cos_mean = ((2.0 * PI * dx).cos() + (2.0 * PI * dy).cos()) / 2.0;
    -20.0 * (-0.2 * rms).exp() - cos_mean.exp() + 20.0 + E
}

/// Schaffer F7 variant with maximum 2.5 at `x + delta = 0`.
pub fn schaffer(x1: f64, x2: f64, delta: f64) -> f64 {
    let r = (x1 + delta).hypot(x2 + delta);
    let s = (50.0 * r.powf(0.2)).sin();
    2.5 - r.sqrt() * (s * s + 1.0)
}

/// Second-order control system as a first-order pair `(z, z')`.
pub fn control_rhs(t: f64, z: f64, y: f64, u1: f64, u2: f64) -> (f64, f64) {
    let dy = t.sin() * u1 * u1 + t.cos() * u2 * u2 + t.sin() * u1 * u2 - z.sin() * y - t.sin() * z.cos() * z.powi(3);
    (y, dy)
}

/// Classical fixed-step RK4 for a planar system over `[t0, tf]` in `n` steps.
pub fn rk4<F: Fn(f64, f64, f64) -> (f64, f64)>(f: F, t0: f64, tf: f64, y0: (f64, f64), n: usize) -> (f64, f64) {
    let h = (tf - t0) / n as f64;
    let (mut a, mut b) = y0;
    for i in 0..n {
        let t = t0 + i as f64 * h;
        let k1 = f(t, a, b);
        let k2 = f(t + h / 2.0, a + h / 2.0 * k1.0, b + h / 2.0 * k1.1);
        let k3 = f(t + h / 2.0, a + h / 2.0 * k2.0, b + h / 2.0 * k2.1);
        let k4 = f(t + h, a + h * k3.0, b + h * k3.1);
        a += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        b += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
    }
    (a, b)
}

/// `z(1)^2` of the control system from `(2, 2)` via RK4 with step `h`.
pub fn control_objective(u1: f64, u2: f64, h: f64) -> f64 {
    let n = (1.0 / h).round() as usize;
    let (z, _) = rk4(|t, z, y| control_rhs(t, z, y, u1, u2), 0.0, 1.0, (2.0, 2.0), n);
    z * z
}

/// Whether `hits` out of `n` Bernoulli(p) trials lies within 3 sigma.
pub fn within_3_sigma(hits: usize, n: usize, p: f64) -> bool {
    let mean = n as f64 * p;
    let sd = (n as f64 * p * (1.0 - p)).sqrt();
    (hits as f64 - mean).abs() <= 3.0 * sd.max(1e-12)
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
