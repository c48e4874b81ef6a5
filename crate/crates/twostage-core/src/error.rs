use thiserror::Error;

/// Errors produced by model construction and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// A model parameter violates its admissible range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An operation was called outside its mathematical domain.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// The requested warranty price leaves no admissible product price.
    #[error("infeasible warranty price {p_w}: {reason}")]
    InfeasibleWarrantyPrice { p_w: f64, reason: String },

    /// A numerical solver could not produce a solution (corrupt inputs).
    #[error("solver failure: {0}")]
    Solver(String),
}

impl ModelError {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        ModelError::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        ModelError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;
