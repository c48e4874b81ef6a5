//! Secant-slope helpers of the cost-erosion curve and the switching-time
//! sign function.
//!
//! With cost eroding as e^{−alpha·t}, `phi1(x)` and `phi2(x)` are the
//! absolute secant slopes of that curve over [0, x] and [x, 1]. The optimal
//! stage prices are proportional to them, and the derivative of total profit
//! in the switching time has the sign of `z_fn(x)`, which is strictly
//! decreasing with a single root on (0, 1). That root is the optimal
//! switching time.

use crate::error::{ModelError, Result};

/// 1 − e^{−u} evaluated without cancellation; switches to a 3-term Taylor
/// expansion below 1e-8 because the switching-time bisection probes x values
/// down to 1e-9.
pub(crate) fn one_minus_exp_neg(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        u * (1.0 - u * (0.5 - u / 6.0))
    } else {
        -(-u).exp_m1()
    }
}

/// Absolute secant slope of e^{−alpha·t} over [0, x]: `(1 − e^{−alpha·x})/x`.
pub fn phi1(x: f64, alpha: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(ModelError::domain("phi1", format!("x must lie in (0, 1], got {x}")));
    }
    if !(alpha >= 0.0) {
        return Err(ModelError::domain("phi1", "alpha must be >= 0"));
    }
    Ok(one_minus_exp_neg(alpha * x) / x)
}

/// Absolute secant slope of e^{−alpha·t} over [x, 1]: `(e^{−alpha·x} − e^{−alpha})/(1 − x)`.
pub fn phi2(x: f64, alpha: f64) -> Result<f64> {
    if !(x >= 0.0 && x < 1.0) {
        return Err(ModelError::domain("phi2", format!("x must lie in [0, 1), got {x}")));
    }
    if !(alpha >= 0.0) {
        return Err(ModelError::domain("phi2", "alpha must be >= 0"));
    }
    // e^{−alpha·x}·(1 − e^{−alpha(1−x)})/(1−x), stable as x → 1.
    Ok((-alpha * x).exp() * one_minus_exp_neg(alpha * (1.0 - x)) / (1.0 - x))
}

/// Sign function of the profit derivative in the switching time:
/// `(gamma−1)·alpha·e^{−alpha·x}·(phi1^gamma − phi2^gamma)
///  − gamma·(phi2·phi1^gamma − phi1·phi2^gamma)`.
///
/// Positive left of the optimal switching time, negative right of it.
pub fn z_fn(x: f64, alpha: f64, gamma: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(ModelError::domain("z_fn", format!("x must lie in (0, 1), got {x}")));
    }
    if !(alpha > 0.0) {
        return Err(ModelError::domain("z_fn", "alpha must be > 0"));
    }
    if !(gamma > 1.0) {
        return Err(ModelError::domain("z_fn", "gamma must be > 1"));
    }
    let f1 = phi1(x, alpha)?;
    let f2 = phi2(x, alpha)?;
    let p1g = f1.powf(gamma);
    let p2g = f2.powf(gamma);
    Ok((gamma - 1.0) * alpha * (-alpha * x).exp() * (p1g - p2g) - gamma * (f2 * p1g - f1 * p2g))
}

/// `z_fn` rescaled by alpha^(gamma+1) so convergence thresholds are
/// parameter-independent (z itself scales like that power of alpha).
pub fn z_normalized(x: f64, alpha: f64, gamma: f64) -> Result<f64> {
    Ok(z_fn(x, alpha, gamma)? / alpha.powf(gamma + 1.0))
}
