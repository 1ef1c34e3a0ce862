//! Centralised numerical tolerances.
//!
//! Two regimes are distinguished throughout the crate:
//!
//! - *structural* tolerances guard algebraic identities that hold exactly in
//!   real arithmetic (trace preservation, Kraus completeness, symmetry
//!   relations) and only absorb floating-point round-off;
//! - *optimisation* tolerances bound the accuracy of iteratively maximised
//!   quantities (capacities, optimal inputs, thresholds).
//!
//! Keeping them in one place makes every acceptance check in [`crate::verify`]
//! and the test suite refer to the same numbers.

/// Slack for identities that are exact in real arithmetic.
pub const STRUCTURAL_TOL: f64 = 1e-12;

/// Accuracy demanded of optimised quantities (capacities, maximisers).
pub const OPT_TOL: f64 = 1e-6;

/// Default bracket width for 1-D golden-section refinement.
pub const DEFAULT_OPT_TOL: f64 = 1e-9;

/// Default absolute truncation tolerance for capacity series evaluation.
pub const DEFAULT_SERIES_TOL: f64 = 1e-10;

/// Default tolerance for scalar root solving (bisection width).
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

/// Entropy arguments within this distance of {0, 1} are clamped onto the
/// boundary rather than rejected.
pub const ENTROPY_CLAMP: f64 = 1e-12;

/// Default master seed used by command-line entry points.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Default Monte Carlo sample count.
pub const DEFAULT_SAMPLES: usize = 1_000_000;

/// Default number of warm-up customers discarded from queue simulations.
pub const DEFAULT_BURN_IN: usize = 10_000;

/// Default burn-in for a run of `n` retained samples: at least
/// [`DEFAULT_BURN_IN`], and at least 1% of `n`.
pub fn default_burn_in(n: usize) -> usize {
    DEFAULT_BURN_IN.max(n / 100)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn burn_in_scales_with_run_length() {
        assert_eq!(default_burn_in(1_000), 10_000);
        assert_eq!(default_burn_in(1_000_000), 10_000);
        assert_eq!(default_burn_in(10_000_000), 100_000);
    }
}
