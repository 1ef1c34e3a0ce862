//! Scalar optimisation and root-finding kernels.
//!
//! Capacities in this crate are maxima of smooth concave (or at least
//! unimodal-in-practice) functions of one variable, so a dense grid scan to
//! localise the maximum followed by golden-section refinement of the
//! bracketing interval is both simple and robust. Root solving for the
//! stationarity equations uses plain bisection after a sign-change scan.

/// Golden ratio.
const PHI: f64 = 1.618_033_988_749_895;
/// Inverse golden ratio step `2 - φ = 1/φ²`.
const RESP: f64 = 2.0 - PHI;

/// Maximises `f` on `[a, b]` by golden-section search until the bracket is
/// narrower than `tol`. Returns `(x_max, f(x_max))`.
///
/// `f` is assumed unimodal on the interval; on flat or multimodal inputs the
/// result is still a local maximiser inside the bracket.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = a + RESP * (b - a);
    let mut x2 = b - RESP * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a) > tol {
        if f1 < f2 {
            // Maximum lies to the right of x1.
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - RESP * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + RESP * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximises `f` on `[a, b]`: evaluates an inclusive uniform grid of
/// `points` samples, takes the best (ties broken toward the smaller
/// abscissa), then golden-section refines between its grid neighbours.
///
/// Returns `(x_max, f(x_max))`, never worse than the best grid sample.
pub fn grid_then_golden_max<F>(mut f: F, a: f64, b: f64, points: usize, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    assert!(points >= 3, "grid needs at least 3 points");
    assert!(b > a, "empty interval");
    let grid_x = |i: usize| a + (b - a) * (i as f64) / ((points - 1) as f64);
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    let mut best_x = a;
    for i in 0..points {
        let x = grid_x(i);
        let v = f(x);
        // Strict improvement keeps the first (smallest-x) maximiser on ties.
        if v > best_v {
            best_v = v;
            best_i = i;
            best_x = x;
        }
    }
    let lo = grid_x(best_i.saturating_sub(1));
    let hi = grid_x((best_i + 1).min(points - 1));
    if hi <= lo {
        return (best_x, best_v);
    }
    let (xr, vr) = golden_max(&mut f, lo, hi, tol);
    if vr >= best_v {
        (xr, vr)
    } else {
        (best_x, best_v)
    }
}

/// Scans `[a, b]` in `segments` equal pieces and returns the first
/// subinterval on which `f` changes sign (or hits zero at its left end).
pub fn first_sign_change<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    segments: usize,
) -> Option<(f64, f64)> {
    assert!(segments >= 1);
    let step = (b - a) / segments as f64;
    let mut x0 = a;
    let mut f0 = f(x0);
    for i in 1..=segments {
        let x1 = if i == segments { b } else { a + step * i as f64 };
        let f1 = f(x1);
        if f0 == 0.0 {
            return Some((x0, x0));
        }
        if f0.signum() != f1.signum() {
            return Some((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    None
}

/// Bisects `f` to a root on `[a, b]`, assuming `f(a)` and `f(b)` have
/// opposite signs (a degenerate bracket `a == b` returns `a`). Stops when
/// the bracket is narrower than `tol`.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return a;
    }
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() < tol {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fa.signum() == fm.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
