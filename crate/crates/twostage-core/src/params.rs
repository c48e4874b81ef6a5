//! Model parameters and their admissible ranges.

use crate::error::{ModelError, Result};

/// Parameters of the extended-warranty channel.
///
/// These are only meaningful when the warranty is part of the scenario;
/// the base pricing model ignores them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarrantyParams {
    /// Average failure rate of a sold unit over the horizon, in [0, 1].
    pub f0: f64,
    /// Servicing cost per warranty claim, currency ≥ 0.
    pub cw: f64,
    /// Sensitivity of warranty demand to the warranty price, > 0.
    /// Purchase probability is `1 − d·p_w`, so admissible prices live in [0, 1/d].
    pub d: f64,
    /// Sensitivity of the initial reliability perception to the warranty price, > 0.
    pub b: f64,
    /// Smoothing factor of the pre-launch perception update, in (0, 1).
    pub beta0: f64,
    /// Smoothing factor of the per-period perception updates, in (0, 1).
    pub beta1: f64,
}

impl WarrantyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.f0 >= 0.0 && self.f0 <= 1.0) {
            return Err(ModelError::param("f0", "must lie in [0, 1]"));
        }
        if !(self.cw >= 0.0) {
            return Err(ModelError::param("cw", "must be >= 0"));
        }
        if !(self.d > 0.0) {
            return Err(ModelError::param("d", "must be > 0"));
        }
        if !(self.b > 0.0) {
            return Err(ModelError::param("b", "must be > 0"));
        }
        if !(self.beta0 > 0.0 && self.beta0 < 1.0) {
            return Err(ModelError::param("beta0", "must lie in (0, 1)"));
        }
        if !(self.beta1 > 0.0 && self.beta1 < 1.0) {
            return Err(ModelError::param("beta1", "must lie in (0, 1)"));
        }
        Ok(())
    }

    /// Largest warranty price with nonnegative purchase probability.
    pub fn max_warranty_price(&self) -> f64 {
        1.0 / self.d
    }
}

/// All scalar parameters of the two-stage pricing model.
///
/// The sales horizon is normalized to [0, 1]. Unit manufacturing cost erodes
/// as `c·e^{−alpha·t}`, demand is log-linear with elasticity exponent `gamma`,
/// and customers' perceived reliability starts at `r0` and is smoothed toward
/// the actual reliability `rm` with factor `beta` over `n_periods` periods.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Cost-erosion rate per unit time, ≥ 0.
    pub alpha: f64,
    /// Price-elasticity exponent, > 1.
    pub gamma: f64,
    /// Unit manufacturing cost at time 0, > 0.
    pub c: f64,
    /// Word-of-mouth smoothing factor, in (0, 1).
    pub beta: f64,
    /// Customers' initial perceived reliability, in [0, 1].
    pub r0: f64,
    /// Actual product reliability, in [0, 1].
    pub rm: f64,
    /// Number of word-of-mouth learning periods, ≥ 2.
    pub n_periods: usize,
    /// Warranty-channel parameters, when the scenario includes one.
    pub warranty: Option<WarrantyParams>,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0) {
            return Err(ModelError::param("alpha", "must be >= 0"));
        }
        if !(self.gamma > 1.0) {
            return Err(ModelError::param("gamma", "must be > 1"));
        }
        if !(self.c > 0.0) {
            return Err(ModelError::param("c", "must be > 0"));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(ModelError::param("beta", "must lie in (0, 1)"));
        }
        if !(self.r0 >= 0.0 && self.r0 <= 1.0) {
            return Err(ModelError::param("r0", "must lie in [0, 1]"));
        }
        if !(self.rm >= 0.0 && self.rm <= 1.0) {
            return Err(ModelError::param("rm", "must lie in [0, 1]"));
        }
        if self.n_periods < 2 {
            return Err(ModelError::param("n_periods", "must be >= 2"));
        }
        if let Some(w) = &self.warranty {
            w.validate()?;
        }
        Ok(())
    }

    /// Warranty parameters, or an error when the scenario has none.
    pub fn warranty_params(&self) -> Result<&WarrantyParams> {
        self.warranty
            .as_ref()
            .ok_or_else(|| ModelError::param("warranty", "scenario has no warranty parameters"))
    }

    /// Initial perception gap `r0 − rm` driving the word-of-mouth correction.
    pub fn perception_gap(&self) -> f64 {
        self.r0 - self.rm
    }
}

impl Default for ModelParams {
    /// The consumer-electronics baseline used by the shipped scenario file
    /// and throughout the tests: moderate learning (alpha = 0.1), cubic
    /// demand elasticity, unit cost 1, and a one-in-ten initial
    /// overestimation of reliability.
    fn default() -> Self {
        ModelParams {
            alpha: 0.1,
            gamma: 3.0,
            c: 1.0,
            beta: 0.5,
            r0: 0.8,
            rm: 0.7,
            n_periods: 200,
            warranty: Some(WarrantyParams {
                f0: 0.1,
                cw: 0.2,
                d: 5.0,
                b: 5.0,
                beta0: 0.2,
                beta1: 0.5,
            }),
        }
    }
}
