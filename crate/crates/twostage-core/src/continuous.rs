//! The benchmark two-stage problem without word-of-mouth (initial perception
//! equals actual reliability).
//!
//! With uniform demand the stage prices have closed forms
//! `p1 = c·gamma·(1 − e^{−alpha·theta})/(alpha·theta·(gamma−1))` and
//! `p2 = c·gamma·(e^{−alpha·theta} − e^{−alpha})/(alpha·(1−theta)·(gamma−1))`,
//! and total profit at those prices reduces to a prefactor times
//! `theta^gamma/(1 − e^{−alpha·theta})^{gamma−1} + (1−theta)^gamma/(e^{−alpha·theta} − e^{−alpha})^{gamma−1}`.
//! The optimal switching time is the unique root of [`z_fn`], found by
//! bisection. For non-uniform densities the same first-order-condition
//! structure is evaluated by quadrature and the switching time by
//! golden-section search.

use crate::analytic::{one_minus_exp_neg, phi1, phi2, z_fn};
use crate::density::DemandDensity;
use crate::error::{ModelError, Result};
use crate::params::ModelParams;
use crate::search::{bisect_decreasing, golden_max};

/// Convergence thresholds of the switching-time bisection.
const Z_NORM_TOL: f64 = 1e-10;
const THETA_BRACKET_TOL: f64 = 1e-12;
/// Bisection probe offsets from the interval ends.
const PROBE_EPS: f64 = 1e-9;

/// Solved two-stage plan: prices, switching time and profit split.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStageSolution {
    /// Stage-1 price.
    pub p1: f64,
    /// Stage-2 price.
    pub p2: f64,
    /// Switching time in (0, 1); `m/n_periods` when produced by a discrete solver.
    pub theta: f64,
    /// Switch period for discrete solvers, `None` for continuous ones.
    pub switch_period: Option<usize>,
    /// Total expected profit.
    pub profit: f64,
    pub profit_stage1: f64,
    pub profit_stage2: f64,
}

fn check_theta(op: &'static str, theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(ModelError::domain(op, format!("theta must lie in (0, 1), got {theta}")));
    }
    Ok(())
}

/// Profit-maximizing stage prices for a fixed switching time (uniform demand).
///
/// For `alpha = 0` both stages price at `c·gamma/(gamma − 1)`.
pub fn optimal_prices_given_theta(params: &ModelParams, theta: f64) -> Result<(f64, f64)> {
    check_theta("optimal_prices_given_theta", theta)?;
    if !(params.gamma > 1.0) {
        return Err(ModelError::param("gamma", "must be > 1"));
    }
    let markup = params.c * params.gamma / (params.gamma - 1.0);
    if params.alpha == 0.0 {
        return Ok((markup, markup));
    }
    let p1 = markup * phi1(theta, params.alpha)? / params.alpha;
    let p2 = markup * phi2(theta, params.alpha)? / params.alpha;
    Ok((p1, p2))
}

/// Per-stage profits at the optimal prices for a fixed switching time
/// (uniform demand, `alpha > 0`).
pub fn stage_profits(params: &ModelParams, theta: f64) -> Result<(f64, f64)> {
    check_theta("total_profit", theta)?;
    if !(params.alpha > 0.0) {
        return Err(ModelError::domain("total_profit", "alpha must be > 0"));
    }
    if !(params.gamma > 1.0) {
        return Err(ModelError::param("gamma", "must be > 1"));
    }
    let g = params.gamma;
    let pref = (params.alpha * (g - 1.0)).powf(g - 1.0) / (g.powf(g) * params.c.powf(g - 1.0));
    let b1 = one_minus_exp_neg(params.alpha * theta);
    let b2 = (-params.alpha * theta).exp() - (-params.alpha).exp();
    let pi1 = pref * theta.powf(g) / b1.powf(g - 1.0);
    let pi2 = pref * (1.0 - theta).powf(g) / b2.powf(g - 1.0);
    Ok((pi1, pi2))
}

/// Total profit at the optimal prices for a fixed switching time
/// (uniform demand, `alpha > 0`).
pub fn total_profit(params: &ModelParams, theta: f64) -> Result<f64> {
    let (pi1, pi2) = stage_profits(params, theta)?;
    Ok(pi1 + pi2)
}

/// Unique optimal switching time and the full plan at it (uniform demand).
///
/// Bisection on [`z_fn`], which is strictly decreasing with exactly one sign
/// change on (0, 1); convergence when the normalized z value drops below
/// 1e-10 or the bracket is narrower than 1e-12.
pub fn solve_theta_star(params: &ModelParams) -> Result<TwoStageSolution> {
    if !(params.alpha > 0.0) {
        return Err(ModelError::domain("solve_theta_star", "alpha must be > 0"));
    }
    if !(params.gamma > 1.0) {
        return Err(ModelError::param("gamma", "must be > 1"));
    }
    let (alpha, gamma) = (params.alpha, params.gamma);
    let lo = PROBE_EPS;
    let hi = 1.0 - PROBE_EPS;
    let z_scale = alpha.powf(gamma + 1.0);
    let theta = bisect_decreasing(
        |x| z_fn(x, alpha, gamma).expect("z evaluated inside (0, 1)"),
        lo,
        hi,
        THETA_BRACKET_TOL,
        |z| (z / z_scale).abs() < Z_NORM_TOL,
    )
    .ok_or_else(|| {
        ModelError::Solver(format!(
            "z has no sign change on ({lo}, {hi}); parameters are corrupt (alpha={alpha}, gamma={gamma})"
        ))
    })?;
    solution_at(params, theta, None)
}

fn solution_at(params: &ModelParams, theta: f64, m: Option<usize>) -> Result<TwoStageSolution> {
    let (p1, p2) = optimal_prices_given_theta(params, theta)?;
    let (pi1, pi2) = stage_profits(params, theta)?;
    Ok(TwoStageSolution {
        p1,
        p2,
        theta,
        switch_period: m,
        profit: pi1 + pi2,
        profit_stage1: pi1,
        profit_stage2: pi2,
    })
}

// ---------------------------------------------------------------------------
// Non-uniform densities: the closed forms above assume uniform demand, so the
// general route evaluates the first-order conditions by quadrature and finds
// the switching time by golden-section search on the quadrature profit.
// ---------------------------------------------------------------------------

/// Stage prices for a fixed switching time under an arbitrary density:
/// `p_i = gamma/(gamma−1) · (∫ λ·c·e^{−alpha t}) / (∫ λ)` over the stage.
pub fn optimal_prices_with_density(
    params: &ModelParams,
    density: &DemandDensity,
    theta: f64,
) -> Result<(f64, f64)> {
    if density.is_uniform() {
        return optimal_prices_given_theta(params, theta);
    }
    check_theta("optimal_prices_with_density", theta)?;
    let markup = params.gamma / (params.gamma - 1.0);
    let m1 = density.mass(0.0, theta)?;
    let m2 = density.mass(theta, 1.0)?;
    let k1 = params.c * density.discounted_mass(0.0, theta, params.alpha)?;
    let k2 = params.c * density.discounted_mass(theta, 1.0, params.alpha)?;
    Ok((markup * k1 / m1, markup * k2 / m2))
}

/// Total profit at quadrature-optimal prices for a fixed switching time.
pub fn total_profit_with_density(
    params: &ModelParams,
    density: &DemandDensity,
    theta: f64,
) -> Result<f64> {
    if density.is_uniform() {
        return total_profit(params, theta);
    }
    check_theta("total_profit_with_density", theta)?;
    let (p1, p2) = optimal_prices_with_density(params, density, theta)?;
    let m1 = density.mass(0.0, theta)?;
    let m2 = density.mass(theta, 1.0)?;
    let k1 = params.c * density.discounted_mass(0.0, theta, params.alpha)?;
    let k2 = params.c * density.discounted_mass(theta, 1.0, params.alpha)?;
    let pi1 = (p1 * m1 - k1) / p1.powf(params.gamma);
    let pi2 = (p2 * m2 - k2) / p2.powf(params.gamma);
    Ok(pi1 + pi2)
}

/// Optimal switching time under an arbitrary density. Uniform densities use
/// the closed-form route; otherwise golden-section search on the quadrature
/// profit.
pub fn solve_theta_star_with_density(
    params: &ModelParams,
    density: &DemandDensity,
) -> Result<TwoStageSolution> {
    if density.is_uniform() {
        return solve_theta_star(params);
    }
    if !(params.alpha > 0.0) {
        return Err(ModelError::domain("solve_theta_star_with_density", "alpha must be > 0"));
    }
    let objective = |theta: f64| {
        total_profit_with_density(params, density, theta).unwrap_or(f64::NEG_INFINITY)
    };
    let theta = golden_max(objective, PROBE_EPS, 1.0 - PROBE_EPS, 1e-10);
    let (p1, p2) = optimal_prices_with_density(params, density, theta)?;
    let m1 = density.mass(0.0, theta)?;
    let m2 = density.mass(theta, 1.0)?;
    let k1 = params.c * density.discounted_mass(0.0, theta, params.alpha)?;
    let k2 = params.c * density.discounted_mass(theta, 1.0, params.alpha)?;
    let pi1 = (p1 * m1 - k1) / p1.powf(params.gamma);
    let pi2 = (p2 * m2 - k2) / p2.powf(params.gamma);
    Ok(TwoStageSolution {
        p1,
        p2,
        theta,
        switch_period: None,
        profit: pi1 + pi2,
        profit_stage1: pi1,
        profit_stage2: pi2,
    })
}

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

/// Axis of a benchmark parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Alpha,
    Gamma,
    Cost,
}

/// One sweep row: the grid value and the solution (or the per-row error).
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub result: Result<TwoStageSolution>,
}

/// Solve the benchmark problem across a parameter grid. Rows that fail
/// validation carry their error instead of aborting the sweep.
pub fn sweep_observations(params: &ModelParams, axis: SweepAxis, grid: &[f64]) -> Vec<SweepRow> {
    use rayon::prelude::*;
    grid.par_iter()
        .map(|&value| {
            let mut p = params.clone();
            match axis {
                SweepAxis::Alpha => p.alpha = value,
                SweepAxis::Gamma => p.gamma = value,
                SweepAxis::Cost => p.c = value,
            }
            let result = p.validate().and_then(|()| solve_theta_star(&p));
            SweepRow { value, result }
        })
        .collect()
}
