//! Single-server FIFO queues: reproducible simulation and analytic
//! stationary laws.
//!
//! The quantity of interest is the *sojourn time* of each customer — waiting
//! plus service — because a qubit decoheres for as long as it sits anywhere
//! in the system. Sojourn times obey the Lindley-style recursion
//!
//! ```text
//! W₁ = S₁,   Wᵢ₊₁ = max(Wᵢ − Aᵢ, 0) + Sᵢ₊₁,
//! ```
//!
//! with `Aᵢ` the inter-arrival gaps and `Sᵢ` the service times
//! ([`lindley_waits`]). Simulation draws each input sequence from its own
//! counter-based stream of a seeded ChaCha generator, so a master seed fully
//! determines every sample regardless of thread count, and distinct
//! sequences never share randomness ([`simulate_queue`]).
//!
//! Analytic stationary laws cover M/M/1 ([`mm1_sojourn_law`]) and G/M/1,
//! where the sojourn is exponential with rate `μ(1−σ)` and `σ` solves
//! `σ = E[e^{−μ(1−σ)A}]` ([`gm1_sigma`]).

use crate::error::GadqError;
use crate::optimize::{bisect, first_sign_change};
use crate::stats::batch_stats;
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use std::io::Write;

/// Stream id for inter-arrival draws.
const STREAM_ARRIVALS: u64 = 0x41;
/// Stream id for service draws.
const STREAM_SERVICES: u64 = 0x53;

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

/// A non-negative service/arrival time distribution.
///
/// All variants are parameterised by their mean so that swapping the shape
/// of a distribution keeps the rate of the queue fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    /// Exponential with the given mean.
    Exponential {
        /// Mean (inverse rate).
        mean: f64,
    },
    /// A point mass at `mean`.
    Deterministic {
        /// The constant value.
        mean: f64,
    },
    /// Uniform on `[mean − width/2, mean + width/2]`.
    Uniform {
        /// Midpoint of the support.
        mean: f64,
        /// Full width of the support; at most `2·mean` so the support stays
        /// non-negative.
        width: f64,
    },
    /// Gamma with the given mean and shape (scale is `mean/shape`).
    Gamma {
        /// Mean.
        mean: f64,
        /// Shape parameter `k`; variance is `mean²/k`.
        shape: f64,
    },
}

impl DistributionSpec {
    /// Exponential with mean `mean > 0`.
    pub fn exponential(mean: f64) -> Result<Self> {
        positive("mean", mean)?;
        Ok(DistributionSpec::Exponential { mean })
    }

    /// Point mass at `mean > 0`.
    pub fn deterministic(mean: f64) -> Result<Self> {
        positive("mean", mean)?;
        Ok(DistributionSpec::Deterministic { mean })
    }

    /// Uniform on `[mean − width/2, mean + width/2]`; needs
    /// `0 < width ≤ 2·mean` to keep the support non-negative.
    pub fn uniform(mean: f64, width: f64) -> Result<Self> {
        positive("mean", mean)?;
        positive("width", width)?;
        if width > 2.0 * mean {
            return Err(GadqError::domain(format!(
                "uniform width {width} exceeds 2·mean = {}; support would go negative",
                2.0 * mean
            )));
        }
        Ok(DistributionSpec::Uniform { mean, width })
    }

    /// Gamma with mean `mean > 0` and shape `shape > 0`.
    pub fn gamma(mean: f64, shape: f64) -> Result<Self> {
        positive("mean", mean)?;
        positive("shape", shape)?;
        Ok(DistributionSpec::Gamma { mean, shape })
    }

    /// Builds a spec from a kind name plus mean and optional shape
    /// parameter, the surface used by configuration layers. `shape` is the
    /// gamma shape or the uniform full width; a uniform without a shape
    /// defaults to full width `2·mean` (support `[0, 2·mean]`), while gamma
    /// requires one. Exponential and deterministic ignore it.
    pub fn from_kind(kind: &str, mean: f64, shape: Option<f64>) -> Result<Self> {
        match kind {
            "exponential" => Self::exponential(mean),
            "deterministic" => Self::deterministic(mean),
            "uniform" => Self::uniform(mean, shape.unwrap_or(2.0 * mean)),
            "gamma" => match shape {
                Some(k) => Self::gamma(mean, k),
                None => Err(GadqError::domain(
                    "gamma distribution needs a shape parameter",
                )),
            },
            other => Err(GadqError::domain(format!(
                "unknown distribution kind '{other}' (expected exponential, deterministic, uniform, or gamma)"
            ))),
        }
    }

    /// Mean of the distribution.
    pub fn mean(&self) -> f64 {
        match *self {
            DistributionSpec::Exponential { mean }
            | DistributionSpec::Deterministic { mean }
            | DistributionSpec::Uniform { mean, .. }
            | DistributionSpec::Gamma { mean, .. } => mean,
        }
    }

    /// A copy rescaled to a new mean: exponential and deterministic move
    /// their mean, uniform scales its width proportionally, gamma keeps its
    /// shape. Used when sweeping a rate at fixed distribution shape.
    pub fn with_mean(&self, mean: f64) -> Result<Self> {
        positive("mean", mean)?;
        match *self {
            DistributionSpec::Exponential { .. } => Self::exponential(mean),
            DistributionSpec::Deterministic { .. } => Self::deterministic(mean),
            DistributionSpec::Uniform {
                mean: m0,
                width,
            } => Self::uniform(mean, width * mean / m0),
            DistributionSpec::Gamma { shape, .. } => Self::gamma(mean, shape),
        }
    }

    /// Short name of the distribution family.
    pub fn kind(&self) -> &'static str {
        match self {
            DistributionSpec::Exponential { .. } => "exponential",
            DistributionSpec::Deterministic { .. } => "deterministic",
            DistributionSpec::Uniform { .. } => "uniform",
            DistributionSpec::Gamma { .. } => "gamma",
        }
    }

    /// Draws one value.
    ///
    /// Exponential and uniform use inverse-CDF transforms of a single
    /// `[0, 1)` draw, so a fixed generator stream pins the exact sample
    /// sequence.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            DistributionSpec::Exponential { mean } => {
                let u: f64 = rng.random();
                -mean * (1.0 - u).ln()
            }
            DistributionSpec::Deterministic { mean } => mean,
            DistributionSpec::Uniform { mean, width } => {
                let u: f64 = rng.random();
                (mean - width / 2.0) + width * u
            }
            DistributionSpec::Gamma { mean, shape } => {
                let g = rand_distr::Gamma::new(shape, mean / shape)
                    .expect("validated gamma parameters");
                g.sample(rng)
            }
        }
    }

    /// Draws `count` values into a vector.
    pub fn sample_vec<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<f64> {
        match *self {
            DistributionSpec::Gamma { mean, shape } => {
                // Construct the sampler once for the whole batch.
                let g = rand_distr::Gamma::new(shape, mean / shape)
                    .expect("validated gamma parameters");
                (0..count).map(|_| g.sample(rng)).collect()
            }
            _ => (0..count).map(|_| self.sample(rng)).collect(),
        }
    }

    /// Laplace transform `E[e^{−sX}]` at `s ≥ 0`, in closed form.
    pub fn laplace(&self, s: f64) -> f64 {
        assert!(s >= 0.0, "Laplace transform argument must be non-negative");
        match *self {
            DistributionSpec::Exponential { mean } => 1.0 / (1.0 + s * mean),
            DistributionSpec::Deterministic { mean } => (-s * mean).exp(),
            DistributionSpec::Uniform { mean, width } => {
                if s == 0.0 {
                    return 1.0;
                }
                let a = mean - width / 2.0;
                let b = mean + width / 2.0;
                ((-s * a).exp() - (-s * b).exp()) / (s * (b - a))
            }
            DistributionSpec::Gamma { mean, shape } => {
                (1.0 + s * mean / shape).powf(-shape)
            }
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(GadqError::domain(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Queue configuration and simulation
// ---------------------------------------------------------------------------

/// Arrival and service distributions of a single-server FIFO queue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueConfig {
    arrival: DistributionSpec,
    service: DistributionSpec,
}

impl QueueConfig {
    /// Validates stability: the arrival rate `λ = 1/E[A]` must be strictly
    /// below the service rate `μ = 1/E[S]`.
    pub fn new(arrival: DistributionSpec, service: DistributionSpec) -> Result<Self> {
        if service.mean() >= arrival.mean() {
            return Err(GadqError::domain(format!(
                "unstable queue: arrival rate {} is not below service rate {}",
                1.0 / arrival.mean(),
                1.0 / service.mean()
            )));
        }
        Ok(QueueConfig { arrival, service })
    }

    /// M/M/1 with arrival rate `λ` and service rate `μ`.
    pub fn mm1(lambda: f64, mu: f64) -> Result<Self> {
        positive("lambda", lambda)?;
        positive("mu", mu)?;
        QueueConfig::new(
            DistributionSpec::exponential(1.0 / lambda)?,
            DistributionSpec::exponential(1.0 / mu)?,
        )
    }

    /// Arrival distribution.
    pub fn arrival(&self) -> &DistributionSpec {
        &self.arrival
    }

    /// Service distribution.
    pub fn service(&self) -> &DistributionSpec {
        &self.service
    }

    /// Arrival rate `1/E[A]`.
    pub fn lambda(&self) -> f64 {
        1.0 / self.arrival.mean()
    }

    /// Service rate `1/E[S]`.
    pub fn mu(&self) -> f64 {
        1.0 / self.service.mean()
    }

    /// Utilisation `λ/μ`.
    pub fn rho(&self) -> f64 {
        self.lambda() / self.mu()
    }
}

/// Sojourn times through the Lindley-style recursion
/// `W₁ = S₁`, `Wᵢ₊₁ = max(Wᵢ − Aᵢ, 0) + Sᵢ₊₁`.
///
/// `services` must hold exactly one more element than `arrivals`.
///
/// ```
/// use gadq::queueing::lindley_waits;
/// let w = lindley_waits(&[1.0, 1.0], &[2.0, 2.0, 2.0]).unwrap();
/// assert_eq!(w, vec![2.0, 3.0, 4.0]);
/// ```
pub fn lindley_waits(arrivals: &[f64], services: &[f64]) -> Result<Vec<f64>> {
    if services.len() != arrivals.len() + 1 {
        return Err(GadqError::LengthMismatch {
            arrivals: arrivals.len(),
            services: services.len(),
        });
    }
    if services.is_empty() {
        return Err(GadqError::domain("need at least one service time"));
    }
    let mut waits = Vec::with_capacity(services.len());
    let mut w = services[0];
    waits.push(w);
    for (a, s) in arrivals.iter().zip(&services[1..]) {
        w = (w - a).max(0.0) + s;
        waits.push(w);
    }
    Ok(waits)
}

/// Simulated stationary sojourn-time sample with full provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct WaitingTimes {
    /// Retained sojourn times (post burn-in), in arrival order.
    pub samples: Vec<f64>,
    /// Number of warm-up customers discarded.
    pub burn_in: usize,
    /// Master seed the streams were derived from.
    pub seed: u64,
    /// Queue that produced the sample.
    pub config: QueueConfig,
}

impl WaitingTimes {
    /// Sample mean.
    pub fn mean(&self) -> f64 {
        batch_stats(&self.samples).mean
    }

    /// Standard error of the sample mean, by batch means: consecutive
    /// sojourn times are strongly positively correlated, so the plain
    /// `s/sqrt(n)` formula would understate the error of the mean.
    pub fn std_err(&self) -> f64 {
        batch_stats(&self.samples).std_err
    }

    /// Empirical Laplace transform `E[e^{−sW}]` with its standard error
    /// (batch means, as for [`WaitingTimes::std_err`]).
    pub fn laplace(&self, s: f64) -> (f64, f64) {
        assert!(s >= 0.0, "Laplace transform argument must be non-negative");
        let vals: Vec<f64> = self.samples.iter().map(|&w| (-s * w).exp()).collect();
        let st = batch_stats(&vals);
        (st.mean, st.std_err)
    }

    /// Writes the trace as CSV with header `index,wait_seconds`.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        out.write_all(b"index,wait_seconds\n")?;
        for (i, w) in self.samples.iter().enumerate() {
            writeln!(out, "{i},{w:.16e}")?;
        }
        Ok(())
    }
}

/// Simulates `n` stationary sojourn times after discarding `burn_in`
/// warm-up customers.
///
/// Inter-arrival gaps and service times come from two independent
/// counter-derived streams of a ChaCha generator seeded with `seed`; the
/// recursion itself is sequential, so results are bit-identical for a given
/// `(config, n, burn_in, seed)` no matter how many threads the process
/// uses. Logs a warning when utilisation is at or above 0.99, where
/// stationary estimates converge very slowly.
pub fn simulate_queue(
    config: &QueueConfig,
    n: usize,
    burn_in: usize,
    seed: u64,
) -> Result<WaitingTimes> {
    if n == 0 {
        return Err(GadqError::domain("need at least one retained sample"));
    }
    if config.rho() >= 0.99 {
        log::warn!(
            "utilisation {:.4} is at or above 0.99; stationary estimates converge slowly",
            config.rho()
        );
    }
    let total = n + burn_in;
    let mut arr_rng = ChaCha8Rng::seed_from_u64(seed);
    arr_rng.set_stream(STREAM_ARRIVALS);
    let mut svc_rng = ChaCha8Rng::seed_from_u64(seed);
    svc_rng.set_stream(STREAM_SERVICES);
    let arrivals = config.arrival.sample_vec(&mut arr_rng, total - 1);
    let services = config.service.sample_vec(&mut svc_rng, total);
    let mut waits = lindley_waits(&arrivals, &services)?;
    let samples = waits.split_off(burn_in);
    Ok(WaitingTimes {
        samples,
        burn_in,
        seed,
        config: *config,
    })
}

/// Deterministically mixes a master seed with a tag (split-mix finaliser),
/// giving independent derived seeds for parallel evaluations that must not
/// share randomness. Order-independent: the derived seed depends only on
/// `(master, tag)`.
pub fn derive_seed(master: u64, tag: u64) -> u64 {
    fn mix(x: u64) -> u64 {
        let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(master ^ mix(tag))
}

// ---------------------------------------------------------------------------
// Analytic stationary laws
// ---------------------------------------------------------------------------

/// An exponential law, used for stationary sojourn distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialLaw {
    /// Rate (inverse mean).
    pub rate: f64,
}

impl ExponentialLaw {
    /// Mean `1/rate`.
    pub fn mean(&self) -> f64 {
        1.0 / self.rate
    }

    /// Laplace transform `rate/(rate + s)` at `s ≥ 0`.
    pub fn laplace(&self, s: f64) -> f64 {
        assert!(s >= 0.0, "Laplace transform argument must be non-negative");
        self.rate / (self.rate + s)
    }
}

/// Stationary sojourn law of the M/M/1 queue: exponential with rate
/// `μ − λ`. Errors unless `0 < λ < μ`.
///
/// ```
/// use gadq::queueing::mm1_sojourn_law;
/// assert_eq!(mm1_sojourn_law(0.5, 1.0).unwrap().mean(), 2.0);
/// ```
pub fn mm1_sojourn_law(lambda: f64, mu: f64) -> Result<ExponentialLaw> {
    positive("lambda", lambda)?;
    positive("mu", mu)?;
    if lambda >= mu {
        return Err(GadqError::domain(format!(
            "M/M/1 needs lambda < mu, got lambda = {lambda}, mu = {mu}"
        )));
    }
    Ok(ExponentialLaw { rate: mu - lambda })
}

/// Root `σ` and resulting sojourn law of a G/M/1 queue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gm1Solution {
    /// Smallest root in `(0, 1)` of `σ = E[e^{−μ(1−σ)A}]`.
    pub sigma: f64,
    /// Stationary sojourn law: exponential with rate `μ(1−σ)`.
    pub sojourn: ExponentialLaw,
}

/// Solves the G/M/1 fixed-point equation `σ = E[e^{−μ(1−σ)A}]` for the
/// smallest root in `(0, 1)` by scanning for a sign change and bisecting to
/// width `tol`.
///
/// Errors: domain error for `μ ≤ 0`; no-root error when the equation has no
/// sign change on `(1e-12, 1−1e-12)` — in particular for unstable queues.
pub fn gm1_sigma(arrival: &DistributionSpec, mu: f64, tol: f64) -> Result<Gm1Solution> {
    positive("mu", mu)?;
    let g = |sigma: f64| arrival.laplace(mu * (1.0 - sigma)) - sigma;
    let (a, b) = first_sign_change(g, 1e-12, 1.0 - 1e-12, 1000).ok_or_else(|| {
        GadqError::NoRoot(format!(
            "G/M/1 fixed point has no root in (0, 1) for arrival mean {} and mu {mu} (is the queue stable?)",
            arrival.mean()
        ))
    })?;
    let sigma = bisect(g, a, b, tol.max(1e-15));
    Ok(Gm1Solution {
        sigma,
        sojourn: ExponentialLaw {
            rate: mu * (1.0 - sigma),
        },
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_validation() {
        assert!(DistributionSpec::exponential(0.0).is_err());
        assert!(DistributionSpec::uniform(1.0, 2.5).is_err());
        assert!(DistributionSpec::gamma(1.0, -1.0).is_err());
        assert!(DistributionSpec::from_kind("weibull", 1.0, None).is_err());
        assert!(DistributionSpec::from_kind("gamma", 1.0, None).is_err());
        // Uniform without a width defaults to full width: support [0, 2m].
        let u = DistributionSpec::from_kind("uniform", 1.0, None).unwrap();
        assert_eq!(u, DistributionSpec::Uniform { mean: 1.0, width: 2.0 });
    }

    #[test]
    fn laplace_transforms_at_zero_are_one() {
        let specs = [
            DistributionSpec::exponential(2.0).unwrap(),
            DistributionSpec::deterministic(2.0).unwrap(),
            DistributionSpec::uniform(2.0, 1.0).unwrap(),
            DistributionSpec::gamma(2.0, 4.0).unwrap(),
        ];
        for sp in specs {
            assert!((sp.laplace(0.0) - 1.0).abs() < 1e-15, "{:?}", sp);
        }
    }

    #[test]
    fn laplace_spot_values() {
        // Exponential mean 2 at s = 1: 1/(1+2) = 1/3.
        let e = DistributionSpec::exponential(2.0).unwrap();
        assert!((e.laplace(1.0) - 1.0 / 3.0).abs() < 1e-15);
        // Deterministic mean 2 at s = 1: e^{-2}.
        let d = DistributionSpec::deterministic(2.0).unwrap();
        assert!((d.laplace(1.0) - (-2.0f64).exp()).abs() < 1e-15);
        // Gamma with shape 1 is exponential.
        let g = DistributionSpec::gamma(2.0, 1.0).unwrap();
        assert!((g.laplace(1.0) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn laplace_matches_monte_carlo() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for sp in [
            DistributionSpec::exponential(1.5).unwrap(),
            DistributionSpec::uniform(1.0, 1.0).unwrap(),
            DistributionSpec::gamma(1.0, 4.0).unwrap(),
        ] {
            let s = 0.7;
            let n = 200_000;
            let draws = sp.sample_vec(&mut rng, n);
            let est: f64 = draws.iter().map(|&x| (-s * x).exp()).sum::<f64>() / n as f64;
            assert!(
                (est - sp.laplace(s)).abs() < 5e-3,
                "{:?}: {} vs {}",
                sp,
                est,
                sp.laplace(s)
            );
        }
    }

    #[test]
    fn sampling_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 400_000;
        // Deterministic is exact.
        let d = DistributionSpec::deterministic(1.7).unwrap();
        assert!(d.sample_vec(&mut rng, 100).iter().all(|&x| x == 1.7));
        // Exponential mean.
        let e = DistributionSpec::exponential(2.0).unwrap();
        let m: f64 = e.sample_vec(&mut rng, n).iter().sum::<f64>() / n as f64;
        assert!((m - 2.0).abs() < 0.02, "exponential mean estimate {m}");
        // Gamma variance mean²/shape.
        let g = DistributionSpec::gamma(2.0, 4.0).unwrap();
        let xs = g.sample_vec(&mut rng, n);
        let mean: f64 = xs.iter().sum::<f64>() / n as f64;
        let var: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        assert!((mean - 2.0).abs() < 0.02);
        assert!((var - 1.0).abs() < 0.03, "gamma variance estimate {var}");
        // Uniform support.
        let u = DistributionSpec::uniform(1.0, 1.0).unwrap();
        assert!(u
            .sample_vec(&mut rng, 10_000)
            .iter()
            .all(|&x| (0.5..1.5).contains(&x)));
    }

    #[test]
    fn lindley_examples() {
        // Constant workload exactly fills the gaps after the ramp-up.
        let w = lindley_waits(&[1.0, 1.0], &[2.0, 2.0, 2.0]).unwrap();
        assert_eq!(w, vec![2.0, 3.0, 4.0]);
        // Long gaps empty the queue: every sojourn is the service time.
        let w = lindley_waits(&[10.0, 10.0], &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(w, vec![1.0, 1.0, 1.0]);
        // Mismatched lengths are rejected.
        assert!(matches!(
            lindley_waits(&[1.0], &[1.0]),
            Err(GadqError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn lindley_lower_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let arr = DistributionSpec::exponential(2.0)
            .unwrap()
            .sample_vec(&mut rng, 999);
        let svc = DistributionSpec::exponential(1.0)
            .unwrap()
            .sample_vec(&mut rng, 1000);
        let w = lindley_waits(&arr, &svc).unwrap();
        for i in 1..w.len() {
            assert!(w[i] >= svc[i] - 1e-15);
            assert!(w[i] >= w[i - 1] - arr[i - 1] + svc[i] - 1e-12);
        }
    }

    #[test]
    fn simulation_is_reproducible_and_stationary() {
        let cfg = QueueConfig::mm1(0.5, 1.0).unwrap();
        let a = simulate_queue(&cfg, 200_000, 2_000, 42).unwrap();
        let b = simulate_queue(&cfg, 200_000, 2_000, 42).unwrap();
        assert_eq!(a.samples, b.samples);
        let c = simulate_queue(&cfg, 200_000, 2_000, 43).unwrap();
        assert_ne!(a.samples, c.samples);
        // Stationary sojourn mean is 1/(mu - lambda) = 2.
        assert!(
            (a.mean() - 2.0).abs() < 4.0 * a.std_err(),
            "mean {} ± {}",
            a.mean(),
            a.std_err()
        );
    }

    #[test]
    fn deterministic_light_traffic_has_no_queueing() {
        // D/D/1 with gaps longer than services: every sojourn is 1/mu.
        let cfg = QueueConfig::new(
            DistributionSpec::deterministic(2.0).unwrap(),
            DistributionSpec::deterministic(1.0).unwrap(),
        )
        .unwrap();
        let w = simulate_queue(&cfg, 1_000, 10, 7).unwrap();
        assert!(w.samples.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn queue_config_rejects_unstable_rates() {
        assert!(QueueConfig::mm1(1.0, 1.0).is_err());
        assert!(QueueConfig::mm1(1.5, 1.0).is_err());
        assert!(QueueConfig::mm1(0.5, 1.0).is_ok());
    }

    #[test]
    fn mm1_law_values() {
        let law = mm1_sojourn_law(0.5, 1.0).unwrap();
        assert_eq!(law.mean(), 2.0);
        assert!((law.laplace(1.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!(mm1_sojourn_law(1.0, 1.0).is_err());
        assert!(mm1_sojourn_law(0.0, 1.0).is_err());
    }

    #[test]
    fn gm1_sigma_exponential_arrivals_recover_mm1() {
        // For Poisson arrivals sigma = lambda/mu.
        for (lambda, mu) in [(0.5, 1.0), (0.3, 1.0), (0.8, 2.0)] {
            let arr = DistributionSpec::exponential(1.0 / lambda).unwrap();
            let sol = gm1_sigma(&arr, mu, 1e-13).unwrap();
            assert!(
                (sol.sigma - lambda / mu).abs() < 1e-10,
                "sigma {} for lambda {lambda}",
                sol.sigma
            );
            assert!((sol.sojourn.rate - (mu - lambda)).abs() < 1e-9);
        }
    }

    #[test]
    fn gm1_sigma_deterministic_arrivals() {
        // sigma solves sigma = e^{-2(1-sigma)} at lambda = 0.5, mu = 1.
        let arr = DistributionSpec::deterministic(2.0).unwrap();
        let sol = gm1_sigma(&arr, 1.0, 1e-13).unwrap();
        assert!(
            (sol.sigma - 0.203_187_869_979_979_95).abs() < 1e-10,
            "sigma {}",
            sol.sigma
        );
        // Fixed-point residual.
        let resid = (arr.laplace(1.0 - sol.sigma) - sol.sigma).abs();
        assert!(resid < 1e-10);
        // Regular arrivals queue less than Poisson arrivals.
        let exp_sigma = gm1_sigma(
            &DistributionSpec::exponential(2.0).unwrap(),
            1.0,
            1e-13,
        )
        .unwrap()
        .sigma;
        assert!(sol.sigma < exp_sigma);
    }

    #[test]
    fn gm1_sigma_needs_stability() {
        // Arrival mean 0.5 < 1/mu: unstable, no root in (0, 1).
        let arr = DistributionSpec::exponential(0.5).unwrap();
        assert!(matches!(
            gm1_sigma(&arr, 1.0, 1e-13),
            Err(GadqError::NoRoot(_))
        ));
    }

    #[test]
    fn empirical_laplace_tracks_analytic_law() {
        let cfg = QueueConfig::mm1(0.5, 1.0).unwrap();
        let w = simulate_queue(&cfg, 200_000, 2_000, 9).unwrap();
        let (est, se) = w.laplace(1.0);
        let truth = mm1_sojourn_law(0.5, 1.0).unwrap().laplace(1.0);
        assert!(
            (est - truth).abs() < 4.0 * se,
            "Laplace estimate {est} ± {se} vs {truth}"
        );
    }

    #[test]
    fn csv_trace_format() {
        let cfg = QueueConfig::mm1(0.5, 1.0).unwrap();
        let w = simulate_queue(&cfg, 3, 0, 1).unwrap();
        let mut buf = Vec::new();
        w.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("index,wait_seconds"));
        let first = lines.next().unwrap();
        assert!(first.starts_with("0,"));
        assert_eq!(text.lines().count(), 4);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(42, 1);
        let b = derive_seed(42, 2);
        let c = derive_seed(43, 1);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(42, 1));
    }
}
