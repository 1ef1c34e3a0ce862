//! Sample statistics over the deterministic chunked reductions.

use crate::parallel::{chunked_sum, chunked_sum_by};

/// Mean, standard error, and size of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    /// Sample mean.
    pub mean: f64,
    /// Standard error of the mean, `s / sqrt(n)` with the unbiased `s`.
    pub std_err: f64,
    /// Number of observations.
    pub n: usize,
}

/// Computes mean and standard error of `xs` with the fixed chunked addition
/// tree, so the result does not depend on thread count or feature set.
///
/// A sample of size 0 or 1 reports a standard error of 0.
pub fn sample_stats(xs: &[f64]) -> SampleStats {
    let n = xs.len();
    if n == 0 {
        return SampleStats {
            mean: 0.0,
            std_err: 0.0,
            n,
        };
    }
    let mean = chunked_sum(xs) / n as f64;
    if n == 1 {
        return SampleStats {
            mean,
            std_err: 0.0,
            n,
        };
    }
    let ss = chunked_sum_by(xs, |&x| {
        let d = x - mean;
        d * d
    });
    let var = ss / (n as f64 - 1.0);
    SampleStats {
        mean,
        std_err: (var / n as f64).sqrt(),
        n,
    }
}

/// Number of batches used by [`batch_stats`].
pub const BATCH_COUNT: usize = 100;

/// Mean and standard error of the mean by the method of batch means.
///
/// The sample is split into [`BATCH_COUNT`] contiguous batches (sizes
/// differing by at most one) and the standard error is estimated from the
/// spread of the batch means. For independent observations this converges
/// to the plain `s/sqrt(n)`; for positively autocorrelated series — queue
/// sojourn times above all — it stays honest where the plain formula
/// underestimates, which keeps every `k`-standard-error acceptance band in
/// this crate calibrated. Samples shorter than twice the batch count fall
/// back to [`sample_stats`].
pub fn batch_stats(xs: &[f64]) -> SampleStats {
    let n = xs.len();
    if n < 2 * BATCH_COUNT {
        return sample_stats(xs);
    }
    let mean = chunked_sum(xs) / n as f64;
    let base = n / BATCH_COUNT;
    let extra = n % BATCH_COUNT;
    let mut ss = 0.0f64;
    let mut start = 0usize;
    for b in 0..BATCH_COUNT {
        let len = base + usize::from(b < extra);
        let bm = chunked_sum(&xs[start..start + len]) / len as f64;
        let d = bm - mean;
        ss += d * d;
        start += len;
    }
    let var_of_batch_mean = ss / (BATCH_COUNT as f64 - 1.0);
    SampleStats {
        mean,
        std_err: (var_of_batch_mean / BATCH_COUNT as f64).sqrt(),
        n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_of_known_sample() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let s = sample_stats(&xs);
        assert_eq!(s.mean, 2.5);
        assert_eq!(s.n, 4);
        // variance 5/3, std err sqrt(5/3/4)
        assert!((s.std_err - (5.0 / 3.0f64 / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_samples() {
        assert_eq!(sample_stats(&[]).std_err, 0.0);
        let one = sample_stats(&[3.5]);
        assert_eq!(one.mean, 3.5);
        assert_eq!(one.std_err, 0.0);
    }

    #[test]
    fn batch_stats_matches_plain_on_independent_data() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let xs: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>()).collect();
        let plain = sample_stats(&xs);
        let batched = batch_stats(&xs);
        assert_eq!(batched.mean, plain.mean);
        assert!(
            (batched.std_err - plain.std_err).abs() < 0.25 * plain.std_err,
            "batched {} vs plain {}",
            batched.std_err,
            plain.std_err
        );
    }

    #[test]
    fn batch_stats_widens_on_correlated_data() {
        // A slowly drifting series: strong positive autocorrelation.
        let mut xs = Vec::with_capacity(20_000);
        let mut level = 0.0f64;
        for i in 0..20_000usize {
            let shock = ((i as f64 * 78.233).sin() * 9_631.477).fract() - 0.5;
            level = 0.99 * level + shock;
            xs.push(level);
        }
        let plain = sample_stats(&xs);
        let batched = batch_stats(&xs);
        assert!(
            batched.std_err > 3.0 * plain.std_err,
            "batched {} vs plain {}",
            batched.std_err,
            plain.std_err
        );
    }

    #[test]
    fn batch_stats_small_sample_fallback() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(batch_stats(&xs), sample_stats(&xs));
    }
}
