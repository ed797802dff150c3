use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::ode::{self, SolverConfig};
use crate::Result;

/// Two-dimensional Ackley function with its minimum moved to `a`.
///
/// Non-negative everywhere and zero only at `(x, y) == a`.
pub fn eval_ackley(x: f64, y: f64, a: [f64; 2]) -> f64 {
    let dx = x - a[0];
    let dy = y - a[1];
    let mean_sq = 0.5 * (dx * dx + dy * dy);
    let mean_cos = 0.5 * ((2.0 * PI * dx).cos() + (2.0 * PI * dy).cos());
    // -20 exp(-0.2 r) - exp(c) + 20 + e, regrouped so both terms vanish
    // exactly at the optimum
    -20.0 * (-0.2 * mean_sq.sqrt()).exp_m1() - E * (mean_cos - 1.0).exp_m1()
}

/// Modified Schaffer F7 evaluated at `X_i = x_i + delta`. Peaks at 2.5 where
/// `X1 = X2 = 0`.
pub fn eval_schaffer_f7(x1: f64, x2: f64, delta: f64) -> f64 {
    schaffer_shifted(x1, x2, [delta, delta])
}

pub(crate) fn schaffer_shifted(x1: f64, x2: f64, delta: [f64; 2]) -> f64 {
    let big_x1 = x1 + delta[0];
    let big_x2 = x2 + delta[1];
    let r2 = big_x1 * big_x1 + big_x2 * big_x2;
    let ripple = (50.0 * r2.powf(0.1)).sin();
    2.5 - r2.powf(0.25) * (ripple * ripple + 1.0)
}

/// The landscape a grid is built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BaseFunction {
    /// Ackley minimum sits at the environment offset.
    Ackley,
    /// Schaffer F7 with the environment offset added to each coordinate.
    SchafferF7,
    /// Terminal value `z(1)^2` of the controlled oscillator, with the
    /// environment offset added to each control.
    Control(SolverConfig),
    /// Constant altitude; only useful for degenerate-landscape checks.
    Flat(f64),
}

impl BaseFunction {
    pub fn name(&self) -> &'static str {
        match self {
            BaseFunction::Ackley => "ackley",
            BaseFunction::SchafferF7 => "schaffer-f7",
            BaseFunction::Control(_) => "control",
            BaseFunction::Flat(_) => "flat",
        }
    }

    pub fn eval(&self, x: f64, y: f64, offset: [f64; 2]) -> Result<f64> {
        Ok(match self {
            BaseFunction::Ackley => eval_ackley(x, y, offset),
            BaseFunction::SchafferF7 => schaffer_shifted(x, y, offset),
            BaseFunction::Control(cfg) => {
                ode::solve_control_shifted(x + offset[0], y + offset[1], cfg)?
            }
            BaseFunction::Flat(z) => *z,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ackley_optimum() {
        assert_eq!(eval_ackley(0.0, 0.0, [0.0, 0.0]), 0.0);
        assert_abs_diff_eq!(eval_ackley(-1.5, 1.0, [-1.5, 1.0]), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ackley_at_unit_point() {
        // closed form at (1, 1): 20 - 20 exp(-0.2)
        assert_abs_diff_eq!(
            eval_ackley(1.0, 1.0, [0.0, 0.0]),
            3.625_384_938_440_363,
            epsilon = 1e-12
        );
    }

    #[test]
    fn schaffer_optimum() {
        assert_eq!(eval_schaffer_f7(0.0, 0.0, 0.0), 2.5);
        for delta in [0.1, 0.7, -3.0, 12.5] {
            assert_abs_diff_eq!(eval_schaffer_f7(-delta, -delta, delta), 2.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn schaffer_at_half() {
        // 40-digit reference evaluation
        assert_abs_diff_eq!(
            eval_schaffer_f7(0.5, 0.5, 0.0),
            1.485_106_934_202_952,
            epsilon = 1e-12
        );
    }

    #[test]
    fn ackley_positive_off_optimum() {
        for &(x, y) in &[(0.01, 0.0), (1.9, -1.9), (-0.5, 0.25)] {
            assert!(eval_ackley(x, y, [0.0, 0.0]) > 0.0);
        }
    }
}
