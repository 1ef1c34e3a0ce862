//! Order-preserving parallel execution with a sequential fallback.
//!
//! Every data-parallel hot path in the crate (parameter-grid sweeps,
//! verification batches, Monte Carlo reductions) funnels through the helpers
//! here. With the `parallel` feature (default) they fan out on the rayon
//! thread pool; without it they compile to plain loops. Results are
//! **bit-identical between the two builds and across thread counts**:
//!
//! - maps collect in input order regardless of scheduling, and
//! - sums are computed per fixed-size chunk and combined in chunk order, so
//!   the floating-point addition tree never depends on how work was split.
//!
//! The always-sequential `*_seq` twins exist for baselines and benches; the
//! criterion suite compares both on the real workloads.

/// Fixed reduction chunk: partial sums are formed over blocks of this many
/// elements and combined left to right.
pub const SUM_CHUNK: usize = 4096;

/// Caps the global rayon thread pool at `threads` workers.
///
/// Returns `true` if the cap was applied. Calling it after the pool has
/// started (or in a build without the `parallel` feature) has no effect and
/// returns `false`.
#[cfg(feature = "parallel")]
pub fn configure_threads(threads: usize) -> bool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .is_ok()
}

/// Caps the global rayon thread pool at `threads` workers (no-op without
/// the `parallel` feature).
#[cfg(not(feature = "parallel"))]
pub fn configure_threads(_threads: usize) -> bool {
    false
}

/// Maps `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Maps `f` over `items`, preserving input order in the output.
#[cfg(not(feature = "parallel"))]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    items.iter().map(f).collect()
}

/// Always-sequential twin of [`map_slice`].
pub fn map_slice_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving index order in the output.
#[cfg(feature = "parallel")]
pub fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `f` over `0..n`, preserving index order in the output.
#[cfg(not(feature = "parallel"))]
pub fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    (0..n).map(f).collect()
}

/// Always-sequential twin of [`map_indices`].
pub fn map_indices_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

fn chunk_partial(chunk: &[f64]) -> f64 {
    let mut s = 0.0;
    for &x in chunk {
        s += x;
    }
    s
}

/// Sums `xs` with the fixed chunked addition tree, fanning the per-chunk
/// partials out in parallel when enabled. Bit-identical to
/// [`chunked_sum_seq`] for any thread count.
#[cfg(feature = "parallel")]
pub fn chunked_sum(xs: &[f64]) -> f64 {
    use rayon::prelude::*;
    let partials: Vec<f64> = xs.par_chunks(SUM_CHUNK).map(chunk_partial).collect();
    chunk_partial(&partials)
}

/// Sums `xs` with the fixed chunked addition tree.
#[cfg(not(feature = "parallel"))]
pub fn chunked_sum(xs: &[f64]) -> f64 {
    chunked_sum_seq(xs)
}

/// Always-sequential twin of [`chunked_sum`]; same chunking, same result.
pub fn chunked_sum_seq(xs: &[f64]) -> f64 {
    let partials: Vec<f64> = xs.chunks(SUM_CHUNK).map(chunk_partial).collect();
    chunk_partial(&partials)
}

/// Sums `f(x)` over `xs` with the fixed chunked addition tree, without
/// materialising the mapped values.
#[cfg(feature = "parallel")]
pub fn chunked_sum_by<T, F>(xs: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Send + Sync,
{
    use rayon::prelude::*;
    let partials: Vec<f64> = xs
        .par_chunks(SUM_CHUNK)
        .map(|chunk| {
            let mut s = 0.0;
            for x in chunk {
                s += f(x);
            }
            s
        })
        .collect();
    chunk_partial(&partials)
}

/// Sums `f(x)` over `xs` with the fixed chunked addition tree.
#[cfg(not(feature = "parallel"))]
pub fn chunked_sum_by<T, F>(xs: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Send + Sync,
{
    chunked_sum_by_seq(xs, f)
}

/// Always-sequential twin of [`chunked_sum_by`].
pub fn chunked_sum_by_seq<T, F>(xs: &[T], f: F) -> f64
where
    F: Fn(&T) -> f64,
{
    let partials: Vec<f64> = xs
        .chunks(SUM_CHUNK)
        .map(|chunk| {
            let mut s = 0.0;
            for x in chunk {
                s += f(x);
            }
            s
        })
        .collect();
    chunk_partial(&partials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parallel_and_sequential_sums_are_bit_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [0usize, 1, 5, SUM_CHUNK - 1, SUM_CHUNK, SUM_CHUNK + 1, 3 * SUM_CHUNK + 17] {
            let xs: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
            let a = chunked_sum(&xs);
            let b = chunked_sum_seq(&xs);
            assert_eq!(a.to_bits(), b.to_bits(), "n = {n}");
            let c = chunked_sum_by(&xs, |x| x * x);
            let d = chunked_sum_by_seq(&xs, |x| x * x);
            assert_eq!(c.to_bits(), d.to_bits(), "n = {n}");
        }
    }

    #[test]
    fn maps_preserve_order() {
        let items: Vec<usize> = (0..1000).collect();
        let out = map_slice(&items, |&i| 2 * i);
        assert_eq!(out, map_slice_seq(&items, |&i| 2 * i));
        let idx = map_indices(1000, |i| i as f64);
        assert_eq!(idx, map_indices_seq(1000, |i| i as f64));
    }
}
