//! Error type shared across the crate.

use thiserror::Error;

/// Errors reported by validated constructors and numerical routines.
#[derive(Debug, Clone, Error)]
pub enum GadqError {
    /// A parameter lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Paired sequences have incompatible lengths.
    #[error("length mismatch: expected services = arrivals + 1, got {services} services and {arrivals} arrivals")]
    LengthMismatch {
        /// Number of inter-arrival gaps supplied.
        arrivals: usize,
        /// Number of service times supplied.
        services: usize,
    },

    /// A bracketing root solver found no sign change on its interval.
    #[error("no root: {0}")]
    NoRoot(String),

    /// An iterative solver hit its iteration cap before meeting its
    /// tolerance. Carries the best capacity/input pair seen so far.
    #[error("iteration limit after {iterations} steps (best capacity {:.6})", best.capacity)]
    IterationLimit {
        /// Iterations performed before giving up.
        iterations: usize,
        /// Best iterate at the point of failure.
        best: crate::induced::CapacityResult,
    },
}

impl GadqError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        GadqError::Domain(msg.into())
    }
}
