//! Word-of-mouth dynamics: customers' perceived reliability over the
//! learning periods.
//!
//! Perception is an exponential-smoothing recursion toward the actual
//! reliability `rm`. The base path starts at the initial perception `r0` in
//! period 1 and updates with factor `beta` from period 2 on, so the
//! deviation from `rm` decays geometrically: `r_c(j) − rm = beta^{j−1}(r0 − rm)`.
//!
//! With an extended warranty the pre-launch perception itself depends on the
//! warranty price: a free warranty signals perfect reliability (perception 1),
//! and every unit of warranty price lowers the signal by `(1 − beta0)·b`.
//! The warranty path is indexed from 0 (the pre-launch value) and updates
//! with factor `beta1` in every sales period.

use crate::error::{ModelError, Result};
use crate::params::ModelParams;

/// A perceived-reliability sequence together with the smoothing factor that
/// generated it.
#[derive(Debug, Clone, PartialEq)]
pub struct WomTrajectory {
    values: Vec<f64>,
    beta_used: f64,
    /// Index of the first entry: 1 for the base path, 0 for the warranty path.
    first_index: usize,
}

impl WomTrajectory {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn beta_used(&self) -> f64 {
        self.beta_used
    }

    /// Perceived reliability in period `j` (1-based for the base path,
    /// 0-based for the warranty path).
    pub fn value(&self, j: usize) -> f64 {
        self.values[j - self.first_index]
    }

    pub fn first_index(&self) -> usize {
        self.first_index
    }
}

/// Base perception path: `r_c(1) = r0`, then
/// `r_c(j) = beta·r_c(j−1) + (1 − beta)·rm` for `j = 2..=n_periods`.
pub fn wom_path(r0: f64, rm: f64, beta: f64, n_periods: usize) -> Result<WomTrajectory> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(ModelError::param("beta", "must lie in (0, 1)"));
    }
    if n_periods < 2 {
        return Err(ModelError::param("n_periods", "must be >= 2"));
    }
    let mut values = Vec::with_capacity(n_periods);
    values.push(r0);
    for _ in 1..n_periods {
        let prev = *values.last().unwrap();
        values.push(beta * prev + (1.0 - beta) * rm);
    }
    Ok(WomTrajectory {
        values,
        beta_used: beta,
        first_index: 1,
    })
}

/// Closed form of the base path's deviation from `rm` in period `j` (1-based):
/// `beta^{j−1}·(r0 − rm)`.
pub fn wom_deviation(r0: f64, rm: f64, beta: f64, j: usize) -> f64 {
    beta.powi(j as i32 - 1) * (r0 - rm)
}

/// Warranty-aware perception path, indexed from 0 (pre-launch) through
/// `n_periods`.
///
/// The pre-launch perception is `beta0·r0 + (1 − beta0)·(a − b·p_w)` with the
/// anchor `a = (1 − beta0·r0)/(1 − beta0)` chosen so that a free warranty
/// (`p_w = 0`) signals perfect reliability. The anchor cancels `r0`, leaving
/// `r_c(0) = 1 − (1 − beta0)·b·p_w`. Periods 1..=n then smooth toward `rm`
/// with factor `beta1`.
pub fn wom_path_with_warranty(params: &ModelParams, p_w: f64) -> Result<WomTrajectory> {
    params.validate()?;
    let w = params.warranty_params()?;
    if !(0.0..=w.max_warranty_price()).contains(&p_w) {
        return Err(ModelError::domain(
            "wom_path_with_warranty",
            format!("p_w must lie in [0, 1/d] = [0, {}], got {p_w}", w.max_warranty_price()),
        ));
    }
    // beta0·r0 + (1 − beta0)·(a − b·p_w) with a = (1 − beta0·r0)/(1 − beta0):
    // the anchor cancels r0 exactly, so compute the cancelled form directly.
    let start = warranty_initial_perception(w.beta0, w.b, p_w);
    let mut values = Vec::with_capacity(params.n_periods + 1);
    values.push(start);
    for _ in 0..params.n_periods {
        let prev = *values.last().unwrap();
        values.push(w.beta1 * prev + (1.0 - w.beta1) * params.rm);
    }
    Ok(WomTrajectory {
        values,
        beta_used: w.beta1,
        first_index: 0,
    })
}

/// Pre-launch perception under the warranty model: `1 − (1 − beta0)·b·p_w`.
pub(crate) fn warranty_initial_perception(beta0: f64, b: f64, p_w: f64) -> f64 {
    1.0 - (1.0 - beta0) * b * p_w
}
