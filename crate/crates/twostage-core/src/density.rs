//! Demand density over the normalized sales horizon [0, 1].
//!
//! The base model assumes uniform demand over the horizon; a truncated-normal
//! variant models a lifecycle hump (slow start, mature peak, decline). Both
//! integrate to 1 over [0, 1]. The uniform masses have exact antiderivatives;
//! the normal variant is integrated by adaptive Simpson quadrature to an
//! absolute tolerance of 1e-11, well below every solver tolerance.

use crate::error::{ModelError, Result};

/// Absolute quadrature tolerance for the truncated-normal integrals.
const QUAD_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Uniform,
    TruncatedNormal {
        mu: f64,
        sigma: f64,
        /// 1 / ∫₀¹ φ((t−mu)/sigma) dt, fixed at construction.
        inv_mass: f64,
    },
}

/// Sales-time density λ(t) on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemandDensity {
    kind: Kind,
}

impl DemandDensity {
    /// Uniform demand over the horizon: λ(t) = 1.
    pub fn uniform() -> Self {
        DemandDensity { kind: Kind::Uniform }
    }

    /// Normal density with location `mu` and scale `sigma`, renormalized on [0, 1].
    pub fn truncated_normal(mu: f64, sigma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) || !mu.is_finite() {
            return Err(ModelError::param("mu", "must lie in [0, 1]"));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(ModelError::param("sigma", "must be > 0"));
        }
        let raw = |t: f64| (-0.5 * ((t - mu) / sigma).powi(2)).exp();
        let mass = adaptive_simpson(&raw, 0.0, 1.0, QUAD_TOL);
        Ok(DemandDensity {
            kind: Kind::TruncatedNormal {
                mu,
                sigma,
                inv_mass: 1.0 / mass,
            },
        })
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.kind, Kind::Uniform)
    }

    /// Density value λ(t); zero outside [0, 1].
    pub fn pdf(&self, t: f64) -> f64 {
        if !(0.0..=1.0).contains(&t) {
            return 0.0;
        }
        match self.kind {
            Kind::Uniform => 1.0,
            Kind::TruncatedNormal { mu, sigma, inv_mass } => {
                (-0.5 * ((t - mu) / sigma).powi(2)).exp() * inv_mass
            }
        }
    }

    /// Demand mass ∫_{t0}^{t1} λ(t) dt.
    pub fn mass(&self, t0: f64, t1: f64) -> Result<f64> {
        check_bounds("density_mass", t0, t1)?;
        match self.kind {
            Kind::Uniform => Ok(t1 - t0),
            Kind::TruncatedNormal { .. } => {
                Ok(adaptive_simpson(&|t| self.pdf(t), t0, t1, QUAD_TOL))
            }
        }
    }

    /// Cost-weighted mass ∫_{t0}^{t1} λ(t)·e^{−alpha·t} dt.
    ///
    /// For the uniform density this is the exact antiderivative
    /// `(e^{−alpha·t0} − e^{−alpha·t1})/alpha` (and `t1 − t0` at alpha = 0).
    pub fn discounted_mass(&self, t0: f64, t1: f64, alpha: f64) -> Result<f64> {
        check_bounds("discounted_density_mass", t0, t1)?;
        if !(alpha >= 0.0) {
            return Err(ModelError::domain("discounted_density_mass", "alpha must be >= 0"));
        }
        if alpha == 0.0 {
            return self.mass(t0, t1);
        }
        match self.kind {
            Kind::Uniform => Ok(((-alpha * t0).exp() - (-alpha * t1).exp()) / alpha),
            Kind::TruncatedNormal { .. } => Ok(adaptive_simpson(
                &|t| self.pdf(t) * (-alpha * t).exp(),
                t0,
                t1,
                QUAD_TOL,
            )),
        }
    }
}

fn check_bounds(op: &'static str, t0: f64, t1: f64) -> Result<()> {
    if !(0.0 <= t0 && t0 <= t1 && t1 <= 1.0) {
        return Err(ModelError::domain(
            op,
            format!("bounds must satisfy 0 <= t0 <= t1 <= 1, got [{t0}, {t1}]"),
        ));
    }
    Ok(())
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub(crate) fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}
