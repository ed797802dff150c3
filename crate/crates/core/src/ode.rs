//! Dormand–Prince 5(4) initial-value solver and the controlled oscillator
//! whose terminal state forms the optimal-control landscape.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum IntegrationError {
    #[error("step budget of {max_steps} exhausted at t = {t}")]
    MaxSteps { t: f64, max_steps: usize },
    #[error("non-finite derivative at t = {t}")]
    NonFinite { t: f64 },
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("invalid problem: {0}")]
    InvalidProblem(&'static str),
}

/// Error control and budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub rtol: f64,
    pub atol: f64,
    pub initial_step: f64,
    pub max_steps: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { rtol: 1e-8, atol: 1e-10, initial_step: 1e-3, max_steps: 100_000 }
    }
}

/// `y' = f(t, y)` on `[t0, tf]` from `y0`.
pub struct Ivp<F> {
    pub rhs: F,
    pub t0: f64,
    pub tf: f64,
    pub y0: Vec<f64>,
}

// Dormand–Prince tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;

/// Integrates to `tf` with local error per step held under
/// `atol + rtol * |y|` (RMS norm). Returns the state at `tf`.
pub fn integrate<F>(ivp: &Ivp<F>, cfg: &SolverConfig) -> Result<Vec<f64>, IntegrationError>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    if ivp.t0.partial_cmp(&ivp.tf) != Some(std::cmp::Ordering::Less) {
        return Err(IntegrationError::InvalidProblem("t0 must be < tf"));
    }
    if !(cfg.rtol > 0.0 && cfg.atol > 0.0 && cfg.initial_step > 0.0 && cfg.max_steps > 0) {
        return Err(IntegrationError::InvalidProblem("tolerances and budget must be positive"));
    }
    let n = ivp.y0.len();
    let f = &ivp.rhs;
    let mut t = ivp.t0;
    let mut y = ivp.y0.clone();
    let mut h = cfg.initial_step.min(ivp.tf - ivp.t0);

    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut k5 = vec![0.0; n];
    let mut k6 = vec![0.0; n];
    let mut k7 = vec![0.0; n];
    let mut stage = vec![0.0; n];
    let mut y_new = vec![0.0; n];

    eval(f, t, &y, &mut k1)?;
    for _ in 0..cfg.max_steps {
        if t >= ivp.tf {
            return Ok(y);
        }
        let last = t + h >= ivp.tf;
        if last {
            h = ivp.tf - t;
        }
        for i in 0..n {
            stage[i] = y[i] + h * A21 * k1[i];
        }
        eval(f, t + C2 * h, &stage, &mut k2)?;
        for i in 0..n {
            stage[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        eval(f, t + C3 * h, &stage, &mut k3)?;
        for i in 0..n {
            stage[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        eval(f, t + C4 * h, &stage, &mut k4)?;
        for i in 0..n {
            stage[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        eval(f, t + C5 * h, &stage, &mut k5)?;
        for i in 0..n {
            stage[i] = y[i]
                + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        eval(f, t + h, &stage, &mut k6)?;
        for i in 0..n {
            y_new[i] = y[i]
                + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        let t_new = if last { ivp.tf } else { t + h };
        eval(f, t_new, &y_new, &mut k7)?;

        let mut err_sq = 0.0;
        for i in 0..n {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = cfg.atol + cfg.rtol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / scale).powi(2);
        }
        let err = (err_sq / n.max(1) as f64).sqrt();

        let factor = if err == 0.0 {
            MAX_FACTOR
        } else {
            (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
        };
        if err <= 1.0 {
            t = t_new;
            std::mem::swap(&mut y, &mut y_new);
            // first-same-as-last
            std::mem::swap(&mut k1, &mut k7);
            h *= factor;
        } else {
            h *= factor.min(1.0);
        }
        if h <= f64::EPSILON * t.abs().max(1.0) {
            return Err(IntegrationError::StepUnderflow { t });
        }
    }
    if t >= ivp.tf {
        Ok(y)
    } else {
        Err(IntegrationError::MaxSteps { t, max_steps: cfg.max_steps })
    }
}

fn eval<F>(f: &F, t: f64, y: &[f64], out: &mut [f64]) -> Result<(), IntegrationError>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    f(t, y, out);
    if out.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(IntegrationError::NonFinite { t })
    }
}

/// First-order form of the controlled oscillator
/// `z'' + sin(z) z' + sin(t) cos(z) z^3 = sin(t) U1^2 + cos(t) U2^2 + sin(t) U1 U2`
/// with state `(z, y = z')`.
pub fn control_rhs(t: f64, state: [f64; 2], u1: f64, u2: f64) -> [f64; 2] {
    let [z, y] = state;
    let (st, ct) = t.sin_cos();
    let forcing = st * u1 * u1 + ct * u2 * u2 + st * u1 * u2;
    [y, forcing - z.sin() * y - st * z.cos() * z.powi(3)]
}

/// Initial state `(z, z')` at `t = 0`.
pub const CONTROL_Y0: [f64; 2] = [2.0, 2.0];
/// Terminal time.
pub const CONTROL_TF: f64 = 1.0;

/// Objective `z(1)^2` for controls `u_i + delta`.
pub fn solve_control(u1: f64, u2: f64, delta: f64, cfg: &SolverConfig) -> Result<f64, IntegrationError> {
    solve_control_shifted(u1 + delta, u2 + delta, cfg)
}

/// Objective `z(1)^2` for already shifted controls `(U1, U2)`.
pub fn solve_control_shifted(big_u1: f64, big_u2: f64, cfg: &SolverConfig) -> Result<f64, IntegrationError> {
    let ivp = Ivp {
        rhs: move |t: f64, s: &[f64], out: &mut [f64]| {
            let d = control_rhs(t, [s[0], s[1]], big_u1, big_u2);
            out[0] = d[0];
            out[1] = d[1];
        },
        t0: 0.0,
        tf: CONTROL_TF,
        y0: CONTROL_Y0.to_vec(),
    };
    let end = integrate(&ivp, cfg)?;
    Ok(end[0] * end[0])
}
