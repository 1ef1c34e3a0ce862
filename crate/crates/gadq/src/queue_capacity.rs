//! Capacity of a GAD channel whose damping accumulates while qubits wait in
//! a queue.
//!
//! A qubit that spends sojourn time `w` in the system passes through the
//! unital channel with effective damping `p_eff(w) = 1 − e^{−κw}`
//! ([`p_eff`]), carrying [`per_qubit_capacity`] bits. Multiplying by the
//! arrival rate gives a capacity in bits per second, estimated three ways:
//!
//! - [`queue_capacity_mc`] — Monte Carlo over simulated sojourn times;
//! - [`capacity_series`] — an exact series in the sojourn Laplace
//!   transform: the per-qubit capacity expands as
//!   `(1/ln 2) Σ_{k≥1} e^{−κkw} / (2k(2k−1))`, so any stationary law with a
//!   known transform yields the capacity by summation (closed form for
//!   M/M/1 in [`mm1_capacity_closed_form`], G/M/1 via [`gm1_sigma`]);
//! - [`capacity_series_empirical`] — the same series driven by the
//!   empirical Laplace transform of a simulated sample.
//!
//! A deterministic time-of-flight `T` adds a fixed factor `e^{−κkT}` per
//! series term (equivalently `w → w + T`); the model here sets `T = 0` and
//! callers with a flight delay can shift their sojourn times.
//!
//! [`optimize_lambda`] locates the arrival rate balancing throughput
//! against decoherence, and the `compare_*` functions rank service/arrival
//! distributions at fixed rates.

use crate::error::GadqError;
use crate::holevo::holevo_symmetric;
use crate::optimize::golden_max;
use crate::parallel::map_slice;
use crate::queueing::{
    derive_seed, gm1_sigma, mm1_sojourn_law, simulate_queue, DistributionSpec, QueueConfig,
    WaitingTimes,
};
use crate::stats::batch_stats;
use crate::tolerance::{DEFAULT_SERIES_TOL, STRUCTURAL_TOL};
use crate::Result;
use std::f64::consts::LN_2;

/// Safety cap on series terms (the term rule stops far earlier for any
/// realistic tolerance).
const MAX_SERIES_TERMS: usize = 100_000_000;

// ---------------------------------------------------------------------------
// Decoherence model
// ---------------------------------------------------------------------------

/// Exponential decoherence while waiting: damping rate `κ > 0` per unit
/// sojourn time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceModel {
    kappa: f64,
}

impl DecoherenceModel {
    /// Validates `κ > 0`.
    pub fn new(kappa: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa <= 0.0 {
            return Err(GadqError::domain(format!(
                "decoherence rate kappa must be positive, got {kappa}"
            )));
        }
        Ok(DecoherenceModel { kappa })
    }

    /// Damping rate `κ`.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Effective damping after sojourn time `w ≥ 0`: `1 − e^{−κw}`.
///
/// ```
/// use gadq::queue_capacity::{p_eff, DecoherenceModel};
/// let m = DecoherenceModel::new(1.0).unwrap();
/// assert_eq!(p_eff(&m, 0.0).unwrap(), 0.0);
/// assert!((p_eff(&m, std::f64::consts::LN_2).unwrap() - 0.5).abs() < 1e-15);
/// ```
pub fn p_eff(model: &DecoherenceModel, w: f64) -> Result<f64> {
    if !w.is_finite() || w < 0.0 {
        return Err(GadqError::domain(format!(
            "sojourn time must be non-negative, got {w}"
        )));
    }
    Ok(1.0 - (-model.kappa * w).exp())
}

/// Bits carried by a qubit that waited `w`: the symmetric-channel Holevo
/// information at damping [`p_eff`]. Shares the exact code path with
/// [`holevo_symmetric`]. Panics on negative `w`.
pub fn per_qubit_capacity(model: &DecoherenceModel, w: f64) -> f64 {
    let p = p_eff(model, w).expect("sojourn time must be non-negative");
    holevo_symmetric(p).expect("effective damping lies in [0, 1]")
}

// ---------------------------------------------------------------------------
// Estimates
// ---------------------------------------------------------------------------

/// How a capacity estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityMethod {
    /// Sample average of per-qubit capacities over simulated sojourns.
    MonteCarlo,
    /// Series in a closed-form Laplace transform.
    SeriesClosedForm,
    /// Series in an empirical Laplace transform.
    SeriesEmpirical,
}

impl CapacityMethod {
    /// Stable machine-readable name.
    pub fn as_str(&self) -> &'static str {
        match self {
            CapacityMethod::MonteCarlo => "monte_carlo",
            CapacityMethod::SeriesClosedForm => "series_closed_form",
            CapacityMethod::SeriesEmpirical => "series_empirical",
        }
    }
}

/// A capacity in bits per second with an error scale.
///
/// For Monte Carlo estimates `std_err` is the sampling standard error; for
/// series estimates it is the analytic truncation bound (and for empirical
/// series the two combined in quadrature), so `value` is reliable to a few
/// multiples of `std_err` in every case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    /// Capacity estimate, bits per second.
    pub value: f64,
    /// Error scale (see type docs).
    pub std_err: f64,
    /// Estimation route.
    pub method: CapacityMethod,
    /// Series length actually summed, when a series was involved.
    pub truncation_k: Option<usize>,
}

/// Monte Carlo capacity: `λ · mean(per-qubit capacity over simulated
/// sojourns)`. The standard error is estimated by batch means because
/// consecutive sojourns are positively correlated and a plain `s/sqrt(n)`
/// would understate it.
pub fn queue_capacity_mc(
    config: &QueueConfig,
    model: &DecoherenceModel,
    n: usize,
    burn_in: usize,
    seed: u64,
) -> Result<CapacityEstimate> {
    let waits = simulate_queue(config, n, burn_in, seed)?;
    Ok(capacity_from_waits(&waits, model))
}

/// Monte Carlo capacity from an existing sojourn sample.
pub fn capacity_from_waits(waits: &WaitingTimes, model: &DecoherenceModel) -> CapacityEstimate {
    let caps = map_slice(&waits.samples, |&w| per_qubit_capacity(model, w));
    let st = batch_stats(&caps);
    let lambda = waits.config.lambda();
    CapacityEstimate {
        value: lambda * st.mean,
        std_err: lambda * st.std_err,
        method: CapacityMethod::MonteCarlo,
        truncation_k: None,
    }
}

/// Series capacity from a stationary sojourn Laplace transform:
///
/// ```text
/// C = (λ/ln 2) · Σ_{k≥1} L(κk) / (2k(2k−1)).
/// ```
///
/// Terms are summed until the first one falls below `tol` (which must be
/// positive); the remainder is then pinned between 0 and
/// `(λ/ln 2)·(ln 2 − Σ_{k≤K} coef)·L(κ(K+1))` because `L` is
/// non-increasing, so that upper estimate is added to the value and also
/// reported as `std_err`. With `L ≡ 1` the result telescopes to exactly
/// `λ`.
pub fn capacity_series<F: Fn(f64) -> f64>(
    laplace: F,
    lambda: f64,
    model: &DecoherenceModel,
    tol: f64,
) -> CapacityEstimate {
    assert!(tol > 0.0, "series tolerance must be positive");
    let scale = lambda / LN_2;
    let mut partial = 0.0f64;
    let mut coef_sum = 0.0f64;
    let mut k = 0usize;
    loop {
        k += 1;
        let kf = k as f64;
        let coef = 1.0 / (2.0 * kf * (2.0 * kf - 1.0));
        let term = scale * coef * laplace(model.kappa * kf);
        partial += term;
        coef_sum += coef;
        if term < tol || k >= MAX_SERIES_TERMS {
            break;
        }
    }
    let tail = scale * (LN_2 - coef_sum).max(0.0) * laplace(model.kappa * (k + 1) as f64);
    CapacityEstimate {
        value: partial + tail,
        std_err: tail,
        method: CapacityMethod::SeriesClosedForm,
        truncation_k: Some(k),
    }
}

/// Series capacity driven by the empirical Laplace transform of a simulated
/// sojourn sample. Truncation follows the same term rule as
/// [`capacity_series`]; `std_err` combines the sampling standard error of
/// the per-sample series with the truncation bound in quadrature.
pub fn capacity_series_empirical(
    waits: &WaitingTimes,
    model: &DecoherenceModel,
    tol: f64,
) -> CapacityEstimate {
    assert!(tol > 0.0, "series tolerance must be positive");
    let n = waits.samples.len();
    let lambda = waits.config.lambda();
    let scale = lambda / LN_2;
    let xs: Vec<f64> = waits
        .samples
        .iter()
        .map(|&w| (-model.kappa * w).exp())
        .collect();
    let mut pow = xs.clone();
    let mut per_sample = vec![0.0f64; n];
    let mut coef_sum = 0.0f64;
    let mut k = 0usize;
    loop {
        k += 1;
        let kf = k as f64;
        let coef = 1.0 / (2.0 * kf * (2.0 * kf - 1.0));
        let mut mean_k = 0.0;
        for i in 0..n {
            per_sample[i] += coef * pow[i];
            mean_k += pow[i];
            pow[i] *= xs[i];
        }
        mean_k /= n as f64;
        coef_sum += coef;
        let term = scale * coef * mean_k;
        if term < tol || k >= MAX_SERIES_TERMS {
            break;
        }
    }
    // `pow` now holds x^{K+1}: its mean is the empirical transform at the
    // first omitted argument, bounding the remainder.
    let l_next = crate::parallel::chunked_sum(&pow) / n as f64;
    let tail = scale * (LN_2 - coef_sum).max(0.0) * l_next;
    let vals: Vec<f64> = per_sample.iter().map(|&s| lambda * s / LN_2).collect();
    let st = batch_stats(&vals);
    CapacityEstimate {
        value: st.mean + tail,
        std_err: (st.std_err * st.std_err + tail * tail).sqrt(),
        method: CapacityMethod::SeriesEmpirical,
        truncation_k: Some(k),
    }
}

/// Exact M/M/1 capacity: the series with the stationary sojourn transform
/// `(μ−λ)/(μ−λ+s)`. Errors unless `0 < λ < μ`.
pub fn mm1_capacity_closed_form(
    lambda: f64,
    mu: f64,
    model: &DecoherenceModel,
    tol: f64,
) -> Result<CapacityEstimate> {
    let law = mm1_sojourn_law(lambda, mu)?;
    Ok(capacity_series(|s| law.laplace(s), lambda, model, tol))
}

// ---------------------------------------------------------------------------
// Arrival-rate optimisation
// ---------------------------------------------------------------------------

/// How [`optimize_lambda`] evaluates a candidate arrival rate.
#[derive(Debug, Clone, Copy)]
pub enum LambdaEvaluator<'a> {
    /// Closed-form M/M/1 series (fast, exact).
    Mm1ClosedForm,
    /// Monte Carlo simulation of the queue in `template` with its arrival
    /// mean swapped to `1/λ`; each evaluation derives its own seed from the
    /// master seed and the bit pattern of `λ`, so results depend only on
    /// the set of rates probed, not on evaluation order.
    MonteCarlo {
        /// Queue whose arrival mean is replaced per evaluation.
        template: &'a QueueConfig,
        /// Retained samples per evaluation.
        n: usize,
        /// Warm-up customers per evaluation.
        burn_in: usize,
        /// Master seed.
        seed: u64,
    },
}

impl LambdaEvaluator<'_> {
    /// Stable machine-readable name.
    pub fn name(&self) -> &'static str {
        match self {
            LambdaEvaluator::Mm1ClosedForm => "mm1_closed_form",
            LambdaEvaluator::MonteCarlo { .. } => "monte_carlo",
        }
    }

    fn eval(&self, lambda: f64, mu: f64, model: &DecoherenceModel) -> Result<f64> {
        match *self {
            LambdaEvaluator::Mm1ClosedForm => {
                Ok(mm1_capacity_closed_form(lambda, mu, model, DEFAULT_SERIES_TOL)?.value)
            }
            LambdaEvaluator::MonteCarlo {
                template,
                n,
                burn_in,
                seed,
            } => {
                let cfg = QueueConfig::new(
                    template.arrival().with_mean(1.0 / lambda)?,
                    *template.service(),
                )?;
                let est = queue_capacity_mc(
                    &cfg,
                    model,
                    n,
                    burn_in,
                    derive_seed(seed, lambda.to_bits()),
                )?;
                Ok(est.value)
            }
        }
    }
}

/// Maximises capacity over the arrival rate `λ ∈ (0, μ)`.
///
/// Evaluates 99 evenly spaced interior rates, takes the best (ties toward
/// the smaller rate), then golden-section refines between its neighbours to
/// bracket width `tol`. The coarse grid runs in parallel when enabled;
/// results are thread-count independent. Returns `(λ*, C(λ*))`.
pub fn optimize_lambda(
    mu: f64,
    model: &DecoherenceModel,
    evaluator: &LambdaEvaluator<'_>,
    tol: f64,
) -> Result<(f64, f64)> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(GadqError::domain(format!(
            "service rate mu must be positive, got {mu}"
        )));
    }
    const GRID: usize = 99;
    let lambdas: Vec<f64> = (1..=GRID).map(|i| mu * i as f64 / (GRID + 1) as f64).collect();
    let values = map_slice(&lambdas, |&l| {
        evaluator
            .eval(l, mu, model)
            .expect("interior rates keep the queue stable")
    });
    let mut best = 0usize;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    let lo = if best == 0 { lambdas[0] * 0.5 } else { lambdas[best - 1] };
    let hi = if best + 1 == GRID {
        0.5 * (lambdas[GRID - 1] + mu)
    } else {
        lambdas[best + 1]
    };
    let (lam_g, val_g) = golden_max(
        |l| evaluator.eval(l, mu, model).unwrap_or(f64::NEG_INFINITY),
        lo,
        hi,
        tol,
    );
    if val_g >= values[best] {
        Ok((lam_g, val_g))
    } else {
        Ok((lambdas[best], values[best]))
    }
}

// ---------------------------------------------------------------------------
// Distribution comparisons
// ---------------------------------------------------------------------------

/// Ranks service distributions of common mean `1/μ` by Monte Carlo capacity
/// in an M/G/1 queue at arrival rate `λ`, best first.
///
/// All runs share the master seed, so arrival streams are common random
/// numbers across the candidates and the ranking differences are far less
/// noisy than the individual error bars suggest.
pub fn compare_service_distributions(
    lambda: f64,
    mu: f64,
    model: &DecoherenceModel,
    services: &[DistributionSpec],
    n: usize,
    burn_in: usize,
    seed: u64,
) -> Result<Vec<(DistributionSpec, CapacityEstimate)>> {
    if services.is_empty() {
        return Err(GadqError::domain("no service distributions given"));
    }
    for sp in services {
        if (sp.mean() - 1.0 / mu).abs() > STRUCTURAL_TOL * (1.0 + 1.0 / mu) {
            return Err(GadqError::domain(format!(
                "service mean {} does not match 1/mu = {}",
                sp.mean(),
                1.0 / mu
            )));
        }
    }
    let arrival = DistributionSpec::exponential(1.0 / lambda)?;
    let estimates = map_slice(services, |sp| -> Result<CapacityEstimate> {
        let cfg = QueueConfig::new(arrival, *sp)?;
        queue_capacity_mc(&cfg, model, n, burn_in, seed)
    });
    let mut out = Vec::with_capacity(services.len());
    for (sp, est) in services.iter().zip(estimates) {
        out.push((*sp, est?));
    }
    out.sort_by(|a, b| b.1.value.total_cmp(&a.1.value));
    Ok(out)
}

/// Ranks arrival distributions of common mean `1/λ` by analytic G/M/1
/// capacity (fixed-point `σ`, exponential sojourn, series), best first.
pub fn compare_arrival_distributions(
    lambda: f64,
    mu: f64,
    model: &DecoherenceModel,
    arrivals: &[DistributionSpec],
    tol: f64,
) -> Result<Vec<(DistributionSpec, CapacityEstimate)>> {
    if arrivals.is_empty() {
        return Err(GadqError::domain("no arrival distributions given"));
    }
    for sp in arrivals {
        if (sp.mean() - 1.0 / lambda).abs() > STRUCTURAL_TOL * (1.0 + 1.0 / lambda) {
            return Err(GadqError::domain(format!(
                "arrival mean {} does not match 1/lambda = {}",
                sp.mean(),
                1.0 / lambda
            )));
        }
    }
    let mut out = Vec::with_capacity(arrivals.len());
    for sp in arrivals {
        let sol = gm1_sigma(sp, mu, tol)?;
        let est = capacity_series(|s| sol.sojourn.laplace(s), lambda, model, DEFAULT_SERIES_TOL);
        out.push((*sp, est));
    }
    out.sort_by(|a, b| b.1.value.total_cmp(&a.1.value));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
