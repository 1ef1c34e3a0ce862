//! One-stop per-channel summary and parameter sweeps.
//!
//! [`ChannelReport::compute`] gathers everything the library knows about a
//! single damping/excitation point — Holevo information by both routes,
//! capacities of the two induced classical channels, the quantum/classical
//! gap, and the entanglement-breaking status — so command-line output and
//! grid sweeps share one code path and agree bit for bit.

use crate::channel::{ebt_threshold, is_entanglement_breaking, GadcParams};
use crate::holevo::{holevo_fixed_point, holevo_gadc, HolevoResult};
use crate::induced::{
    binary_channel_capacity, bsc_capacity, m1_channel, m2_flip_probability, CapacityResult,
};
use crate::parallel::map_slice;
use crate::Result;

/// Everything the library computes for one `(p, n)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelReport {
    /// The channel parameters the report describes.
    pub params: GadcParams,
    /// Holevo information by grid + golden-section search (the reference
    /// route, defined for all parameters).
    pub chi: HolevoResult,
    /// Holevo information by the stationarity equation, when that route
    /// applies (`0 < p < 1`) and its root was bracketed.
    pub chi_fixed: Option<HolevoResult>,
    /// Capacity of the classical channel induced by basis-state inputs and
    /// a basis measurement.
    pub c_m1: CapacityResult,
    /// Capacity of the binary symmetric channel induced by the optimal
    /// symmetric encoding (equatorial, `z = 0`) under the Helstrom
    /// measurement; the optimal prior is uniform by symmetry.
    pub c_m2: f64,
    /// Quantum advantage `χ − C(M₂)` of coherent signalling over the best
    /// symmetric classical strategy.
    pub delta: f64,
    /// Whether the channel is entanglement breaking at these parameters.
    pub entanglement_breaking: bool,
    /// Damping threshold above which the channel at this excitation is
    /// entanglement breaking; `None` at the extreme excitations `n ∈ {0, 1}`
    /// where no finite damping suffices.
    pub p_star: Option<f64>,
}

impl ChannelReport {
    /// Computes the full report; `tol` bounds the search accuracy of every
    /// optimisation involved.
    pub fn compute(params: &GadcParams, tol: f64) -> ChannelReport {
        let chi = holevo_gadc(params, tol);
        let chi_fixed = holevo_fixed_point(params, tol).ok();
        let c_m1 = binary_channel_capacity(&m1_channel(params), tol);
        let c_m2 = bsc_capacity(m2_flip_probability(params, 0.0))
            .expect("flip probability lies in [0, 1]");
        ChannelReport {
            params: *params,
            chi,
            chi_fixed,
            c_m1,
            c_m2,
            delta: chi.chi - c_m2,
            entanglement_breaking: is_entanglement_breaking(params),
            p_star: ebt_threshold(params.n()).ok(),
        }
    }
}

/// Reports for the Cartesian product of damping and excitation grids,
/// excitation-major (all damping values for the first excitation first).
/// Rows are computed in parallel when the `parallel` feature is on; the
/// output order and values are identical either way.
pub fn channel_sweep(p_values: &[f64], n_values: &[f64], tol: f64) -> Result<Vec<ChannelReport>> {
    let mut points = Vec::with_capacity(p_values.len() * n_values.len());
    for &n in n_values {
        for &p in p_values {
            points.push(GadcParams::new(p, n)?);
        }
    }
    Ok(map_slice(&points, |ch| ChannelReport::compute(ch, tol)))
}
