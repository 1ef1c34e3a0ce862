//! One-shot Holevo information of the GAD channel over two-state ensembles.
//!
//! The encoder prepares one of the two pure states with Bloch vectors
//! `r± = (±sqrt(1-z²), 0, z)` with equal priors; the accessible information
//! of the channel output is
//!
//! ```text
//! χ(z) = S(A(σ)) − [S(A(ρ+)) + S(A(ρ-))]/2,
//! ```
//!
//! with `σ` the ensemble average `(0, 0, z)`. Both output entropies reduce
//! to binary entropies of Bloch norms, so the objective is a smooth scalar
//! function of `z` ([`chi_objective`]). Two independent routes to the
//! maximum are provided:
//!
//! - [`holevo_gadc`] — dense grid plus golden-section refinement; this is
//!   the reference method used everywhere else in the crate;
//! - [`holevo_fixed_point`] — root of the stationarity equation in the
//!   output coordinate `u`, kept as a cross-check.
//!
//! At `n = 1/2` the optimum sits at `z = 0` and the value has the closed
//! form [`holevo_symmetric`].

use crate::channel::{h_clamped, GadcParams};
use crate::error::GadqError;
use crate::optimize::{bisect, first_sign_change, grid_then_golden_max};
use crate::Result;

/// Grid density used by [`holevo_gadc`] before refinement.
pub const HOLEVO_GRID_POINTS: usize = 1001;

/// Symmetric two-state ensemble parameterised by the common `z` coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleZ {
    z: f64,
}

impl EnsembleZ {
    /// Validates `z ∈ [-1, 1]`.
    pub fn new(z: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&z) {
            return Err(GadqError::domain(format!(
                "ensemble coordinate z must lie in [-1, 1], got {z}"
            )));
        }
        Ok(EnsembleZ { z })
    }

    /// Shared `z` coordinate.
    pub fn z(&self) -> f64 {
        self.z
    }

    /// Bloch vector of the `+` signal state (on the sphere).
    pub fn r_plus(&self) -> [f64; 3] {
        [(1.0 - self.z * self.z).max(0.0).sqrt(), 0.0, self.z]
    }

    /// Bloch vector of the `-` signal state (on the sphere).
    pub fn r_minus(&self) -> [f64; 3] {
        [-(1.0 - self.z * self.z).max(0.0).sqrt(), 0.0, self.z]
    }

    /// Bloch vector of the equal-prior average state.
    pub fn average(&self) -> [f64; 3] {
        [0.0, 0.0, self.z]
    }
}

/// How a [`HolevoResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HolevoMethod {
    /// Dense grid over `z` with golden-section refinement.
    GridGolden,
    /// Root of the stationarity equation in the output coordinate.
    FixedPoint,
}

/// Diagnostics of the stationarity route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointAux {
    /// Output `z` coordinate of the average state at the optimum.
    pub u: f64,
    /// Output Bloch norm of the signal states at the optimum.
    pub r_star: f64,
}

/// Maximised one-shot Holevo information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolevoResult {
    /// Holevo information in bits.
    pub chi: f64,
    /// Maximising ensemble coordinate.
    pub z_star: f64,
    /// Method that produced this result.
    pub method: HolevoMethod,
    /// Present on the fixed-point route.
    pub aux: Option<FixedPointAux>,
}

/// Holevo information of the ensemble at fixed `z` (in bits).
///
/// Panics if `z` lies outside `[-1, 1]`.
///
/// ```
/// use gadq::channel::GadcParams;
/// use gadq::holevo::chi_objective;
/// // A noiseless channel distinguishes the equatorial pair perfectly.
/// let ch = GadcParams::new(0.0, 0.3).unwrap();
/// assert!((chi_objective(&ch, 0.0) - 1.0).abs() < 1e-15);
/// ```
pub fn chi_objective(ch: &GadcParams, z: f64) -> f64 {
    assert!(
        (-1.0..=1.0).contains(&z),
        "ensemble coordinate z must lie in [-1, 1], got {z}"
    );
    let (p, n) = (ch.p(), ch.n());
    // Output z of the average state (0, 0, z).
    let t = (1.0 - p) * z + p * (1.0 - 2.0 * n);
    // Output Bloch norm of the signal states: transverse part shrinks by
    // sqrt(1-p), longitudinal part equals t.
    let rb = ((1.0 - p) * (1.0 - z * z) + t * t).min(1.0).max(0.0).sqrt();
    h_clamped((1.0 - t.abs()).max(0.0) / 2.0) - h_clamped((1.0 - rb) / 2.0)
}

/// Maximises [`chi_objective`] over `z ∈ [-1, 1]` by dense grid search
/// (1001 points) followed by golden-section refinement to bracket width
/// `tol`. Grid ties are broken toward the smaller `z`, so the result does
/// not depend on evaluation order.
pub fn holevo_gadc(ch: &GadcParams, tol: f64) -> HolevoResult {
    let (z_star, chi) =
        grid_then_golden_max(|z| chi_objective(ch, z), -1.0, 1.0, HOLEVO_GRID_POINTS, tol);
    HolevoResult {
        chi: chi.max(0.0),
        z_star,
        method: HolevoMethod::GridGolden,
        aux: None,
    }
}

/// `f(x) = (1+x) log2(1+x) + (1-x) log2(1-x)`, the negentropy kernel on
/// Bloch norms: the qubit entropy at norm `x` is `1 - f(x)/2`.
pub fn negentropy_kernel(x: f64) -> f64 {
    let a = 1.0 + x;
    let b = 1.0 - x;
    let fa = if a <= 0.0 { 0.0 } else { a * a.log2() };
    let fb = if b <= 0.0 { 0.0 } else { b * b.log2() };
    fa + fb
}

/// `f'(x) = log2((1+x)/(1-x))`, derivative of [`negentropy_kernel`].
pub fn negentropy_kernel_deriv(x: f64) -> f64 {
    ((1.0 + x) / (1.0 - x)).log2()
}

/// Maximises the Holevo information by solving the stationarity equation in
/// the output coordinate `u` (the output `z` of the average state):
///
/// ```text
/// p(u − (1−2n))·f'(r*) = −r*(1−p)·f'(u),
/// r*(u) = sqrt(1 − p − (u − p(1−2n))²/(1−p) + u²),
/// ```
///
/// with `f` the negentropy kernel. The input coordinate is recovered as
/// `z* = (u − p(1−2n))/(1−p)` and the value as
/// `χ = (f(r*) − log2(1−u²) − u·f'(u))/2`.
///
/// The admissible `u` interval (it must map to `z* ∈ [-1, 1]`) is scanned
/// in 1000 segments; the first sign change is bisected to width `tol`.
/// Errors: domain error unless `0 < p < 1`; no-root error if the scan finds
/// no sign change.
pub fn holevo_fixed_point(ch: &GadcParams, tol: f64) -> Result<HolevoResult> {
    let (p, n) = (ch.p(), ch.n());
    if p <= 0.0 || p >= 1.0 {
        return Err(GadqError::domain(format!(
            "fixed-point route needs 0 < p < 1, got p = {p}"
        )));
    }
    let bias = p * (1.0 - 2.0 * n);
    let margin = 1e-9;
    let lo = (bias - (1.0 - p)).max(-1.0 + margin);
    let hi = (bias + (1.0 - p)).min(1.0 - margin);
    if hi <= lo {
        return Err(GadqError::NoRoot(
            "admissible interval for the output coordinate is empty".into(),
        ));
    }
    let r_star = |u: f64| -> f64 {
        let zed = u - bias;
        (1.0 - p - zed * zed / (1.0 - p) + u * u).max(0.0).sqrt()
    };
    let g = |u: f64| -> f64 {
        p * (u - (1.0 - 2.0 * n)) * negentropy_kernel_deriv(r_star(u))
            + r_star(u) * (1.0 - p) * negentropy_kernel_deriv(u)
    };
    let (a, b) = first_sign_change(g, lo, hi, 1000).ok_or_else(|| {
        GadqError::NoRoot(format!(
            "stationarity equation has no sign change on [{lo}, {hi}]"
        ))
    })?;
    let u = bisect(g, a, b, tol.max(1e-14));
    let r = r_star(u);
    let z_star = ((u - bias) / (1.0 - p)).clamp(-1.0, 1.0);
    let chi = 0.5
        * (negentropy_kernel(r)
            - (1.0 - u * u).log2()
            - u * negentropy_kernel_deriv(u));
    Ok(HolevoResult {
        chi: chi.max(0.0),
        z_star,
        method: HolevoMethod::FixedPoint,
        aux: Some(FixedPointAux { u, r_star: r }),
    })
}

/// Closed-form Holevo information of the unital channel (`n = 1/2`):
/// `1 − h((1 − sqrt(1-p))/2)`.
///
/// ```
/// use gadq::holevo::holevo_symmetric;
/// assert_eq!(holevo_symmetric(0.0).unwrap(), 1.0);
/// assert_eq!(holevo_symmetric(1.0).unwrap(), 0.0);
/// ```
pub fn holevo_symmetric(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GadqError::domain(format!(
            "damping must lie in [0, 1], got {p}"
        )));
    }
    Ok(1.0 - h_clamped((1.0 - (1.0 - p).sqrt()) / 2.0))
}
