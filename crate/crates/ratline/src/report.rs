//! Discrete error norms and convergence sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use ratline_core::calculus::differentiate_osc;
use ratline_core::{MobiusMap, OscillatoryFunction};

use crate::error::HarnessError;
use crate::testfn::TestFunction;

/// Uniform grid on `[-x_max, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_max: f64,
    pub points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            x_max: 60.0,
            points: 4001,
        }
    }
}

impl Grid {
    pub fn nodes(&self) -> Vec<f64> {
        let m = self.points - 1;
        (0..self.points)
            .map(|i| -self.x_max + 2.0 * self.x_max * i as f64 / m as f64)
            .collect()
    }

    fn spacing(&self) -> f64 {
        2.0 * self.x_max / (self.points - 1) as f64
    }
}

/// Sup, `L²`, `H¹` and `L¹`-of-derivative errors on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorNorms {
    pub sup: f64,
    pub l2: f64,
    pub h1: f64,
    pub l1_derivative: f64,
}

/// Composite Simpson for an odd number of samples, trapezoid otherwise.
fn composite(values: &[f64], h: f64) -> f64 {
    let m = values.len();
    if m < 2 {
        return 0.0;
    }
    if m % 2 == 1 && m >= 3 {
        let mut s = values[0] + values[m - 1];
        for (i, v) in values.iter().enumerate().take(m - 1).skip(1) {
            s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
        }
        s * h / 3.0
    } else {
        let inner: f64 = values[1..m - 1].iter().sum();
        h * (inner + 0.5 * (values[0] + values[m - 1]))
    }
}

/// Compare `approx` with `reference` on `grid`.
///
/// The derivative of the approximant is taken in coefficient space; the
/// reference uses its exact derivative where available.
pub fn error_report(approx: &OscillatoryFunction, reference: &TestFunction, grid: Grid) -> Result<ErrorNorms, HarnessError> {
    if grid.points < 2 || grid.x_max.is_nan() || grid.x_max <= 0.0 {
        return Err(HarnessError::Invalid("error grid needs at least 2 points and x_max > 0".into()));
    }
    let d_approx = differentiate_osc(approx);
    let xs = grid.nodes();
    let mut abs_e = Vec::with_capacity(xs.len());
    let mut abs_de = Vec::with_capacity(xs.len());
    for &x in &xs {
        abs_e.push((approx.evaluate_real(x) - reference.eval(x)).norm());
        abs_de.push((d_approx.evaluate_real(x) - reference.derivative(x)).norm());
    }
    let h = grid.spacing();
    let sq = |v: &[f64]| v.iter().map(|e| e * e).collect::<Vec<_>>();
    let l2_sq = composite(&sq(&abs_e), h);
    let dl2_sq = composite(&sq(&abs_de), h);
    Ok(ErrorNorms {
        sup: abs_e.iter().copied().fold(0.0, f64::max),
        l2: l2_sq.max(0.0).sqrt(),
        h1: (l2_sq + dl2_sq).max(0.0).sqrt(),
        l1_derivative: composite(&abs_de, h).max(0.0),
    })
}

/// Error norms over a sequence of `n`, with algebraic orders between
/// consecutive entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub function: String,
    pub beta: f64,
    pub grid: Grid,
    pub n_values: Vec<usize>,
    pub errors: Vec<ErrorNorms>,
    /// `-Δ log(sup error) / Δ log n` for each consecutive pair: the local
    /// algebraic order, positive when the error decreases.
    pub fitted_orders: Vec<f64>,
}

/// Least-squares line `y = intercept + slope·x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit {
        intercept: my - slope * mx,
        slope,
        r_squared,
    })
}

fn local_orders(n_values: &[usize], errors: &[f64]) -> Vec<f64> {
    let floor = f64::MIN_POSITIVE;
    n_values
        .windows(2)
        .zip(errors.windows(2))
        .map(|(n, e)| -((e[1].max(floor)).ln() - (e[0].max(floor)).ln()) / ((n[1] as f64).ln() - (n[0] as f64).ln()))
        .collect()
}

/// Interpolate `reference` at each `n` (in parallel) and report its errors.
pub fn convergence_sweep(
    reference: &TestFunction,
    n_values: &[usize],
    beta: f64,
    grid: Grid,
) -> Result<ConvergenceReport, HarnessError> {
    if n_values.is_empty() {
        return Err(HarnessError::Invalid("convergence sweep needs at least one n".into()));
    }
    if n_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(HarnessError::Invalid("n values must be strictly increasing".into()));
    }
    let map = MobiusMap::new(beta)?;
    let errors = n_values
        .par_iter()
        .map(|&n| {
            let g = reference.interpolate(n, map)?;
            error_report(&g, reference, grid)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sups: Vec<f64> = errors.iter().map(|e| e.sup).collect();
    Ok(ConvergenceReport {
        function: reference.name.to_string(),
        beta,
        grid,
        n_values: n_values.to_vec(),
        fitted_orders: local_orders(n_values, &sups),
        errors,
    })
}
