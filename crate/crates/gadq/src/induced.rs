//! Classical binary channels induced by fixed encodings and Helstrom
//! measurement of the GAD channel output.
//!
//! Two encodings matter here:
//!
//! - **Basis encoding** (`|0⟩`, `|1⟩`): the optimal measurement is the
//!   projector onto the non-negative eigenspace of the output difference,
//!   and the induced channel [`m1_channel`] is a generally asymmetric binary
//!   channel.
//! - **Symmetric encoding** (the `z`-ensemble pair): the induced channel
//!   [`m2_channel`] is a binary symmetric channel whose flip probability
//!   depends on `z` and the damping only — remarkably, not on the
//!   environment excitation `n`.
//!
//! Capacities come from a concave 1-D maximisation over the input prior
//! ([`binary_channel_capacity`]) and, independently, from Blahut–Arimoto
//! alternating maximisation ([`blahut_arimoto`]); the two agree to optimiser
//! tolerance and the verification suite holds them to that.

use crate::channel::{h_clamped, DensityMatrix, GadcParams};
use crate::error::GadqError;
use crate::holevo::holevo_gadc;
use crate::mat2::{from_pauli, Matrix2};
use crate::optimize::golden_max;
use crate::tolerance::STRUCTURAL_TOL;
use crate::Result;

// ---------------------------------------------------------------------------
// Binary channels
// ---------------------------------------------------------------------------

/// A discrete memoryless channel with binary input and output.
///
/// Stored column-stochastically: `t[y][x]` is the probability of output `y`
/// given input `x`, and each column sums to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryChannel {
    t: [[f64; 2]; 2],
}

impl BinaryChannel {
    /// Validates transition probabilities (each entry in `[0, 1]`, columns
    /// summing to 1, both up to `1e-12` of round-off).
    pub fn new(t: [[f64; 2]; 2]) -> Result<Self> {
        for x in 0..2 {
            for y in 0..2 {
                let v = t[y][x];
                if !v.is_finite() || v < -STRUCTURAL_TOL || v > 1.0 + STRUCTURAL_TOL {
                    return Err(GadqError::domain(format!(
                        "transition probability t[{y}][{x}] = {v} outside [0, 1]"
                    )));
                }
            }
            let col = t[0][x] + t[1][x];
            if (col - 1.0).abs() > STRUCTURAL_TOL {
                return Err(GadqError::domain(format!(
                    "column {x} sums to {col}, expected 1"
                )));
            }
        }
        let clamp = |v: f64| v.clamp(0.0, 1.0);
        Ok(BinaryChannel {
            t: [
                [clamp(t[0][0]), clamp(t[0][1])],
                [clamp(t[1][0]), clamp(t[1][1])],
            ],
        })
    }

    /// Transition probability `P(Y = y | X = x)`.
    pub fn prob(&self, y: usize, x: usize) -> f64 {
        self.t[y][x]
    }

    /// Raw transition matrix, `t[y][x]`.
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        self.t
    }

    /// Mutual information in bits between input and output when
    /// `P(X = 1) = a`.
    pub fn mutual_information(&self, a: f64) -> f64 {
        let a = a.clamp(0.0, 1.0);
        let w1 = (1.0 - a) * self.t[1][0] + a * self.t[1][1];
        let mi = h_clamped(w1) - (1.0 - a) * h_clamped(self.t[1][0]) - a * h_clamped(self.t[1][1]);
        mi.max(0.0)
    }
}

/// A capacity value together with the prior that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    /// Channel capacity in bits per use.
    pub capacity: f64,
    /// Maximising input probability `P(X = 1)`.
    pub optimal_input: f64,
}

// ---------------------------------------------------------------------------
// Helstrom measurement
// ---------------------------------------------------------------------------

/// Projector of the minimum-error (Helstrom) measurement, with a flag for
/// the degenerate case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelstromOutcome {
    /// Projector onto the non-negative eigenspace of `rho0 - rho1`.
    pub projector: Matrix2,
    /// True when the two states coincide and any measurement is optimal;
    /// the projector is then the zero matrix by convention.
    pub ambiguous: bool,
}

/// Minimum-error measurement discriminating two equiprobable qubit states:
/// the projector onto the non-negative eigenspace of `rho0 - rho1`
/// (eigenvalues exactly at zero count as non-negative).
///
/// The difference of two Hermitian unit-trace matrices is traceless, so its
/// eigenstructure is closed-form in the Pauli decomposition.
pub fn helstrom_projector(rho0: &DensityMatrix, rho1: &DensityMatrix) -> HelstromOutcome {
    let d = rho0.matrix().sub(rho1.matrix());
    if d.max_abs() <= STRUCTURAL_TOL {
        return HelstromOutcome {
            projector: Matrix2::zero(),
            ambiguous: true,
        };
    }
    let (c0, v) = d.pauli_decompose();
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if r <= STRUCTURAL_TOL {
        // Scalar difference; kept for robustness on near-equal inputs.
        return HelstromOutcome {
            projector: if c0 >= 0.0 {
                Matrix2::identity()
            } else {
                Matrix2::zero()
            },
            ambiguous: false,
        };
    }
    let unit = [v[0] / r, v[1] / r, v[2] / r];
    let mut proj = Matrix2::zero();
    if c0 + r >= 0.0 {
        proj = proj.add(&from_pauli(0.5, [0.5 * unit[0], 0.5 * unit[1], 0.5 * unit[2]]));
    }
    if c0 - r >= 0.0 {
        proj = proj.add(&from_pauli(
            0.5,
            [-0.5 * unit[0], -0.5 * unit[1], -0.5 * unit[2]],
        ));
    }
    HelstromOutcome {
        projector: proj,
        ambiguous: false,
    }
}

// ---------------------------------------------------------------------------
// Induced channels
// ---------------------------------------------------------------------------

/// Binary channel induced by basis-state encoding and Helstrom measurement:
///
/// ```text
/// [ 1-pn      p(1-n)     ]
/// [ pn        1-p(1-n)   ]
/// ```
///
/// (columns indexed by the input symbol).
pub fn m1_channel(ch: &GadcParams) -> BinaryChannel {
    let (p, n) = (ch.p(), ch.n());
    BinaryChannel::new([
        [1.0 - p * n, p * (1.0 - n)],
        [p * n, 1.0 - p * (1.0 - n)],
    ])
    .expect("M1 transition matrix is stochastic by construction")
}

/// Flip probability of the symmetric-encoding channel at ensemble
/// coordinate `z`: `q(z) = (1 − sqrt(1-z²)·sqrt(1-p))/2`.
pub fn m2_flip_probability(ch: &GadcParams, z: f64) -> f64 {
    assert!(
        (-1.0..=1.0).contains(&z),
        "ensemble coordinate z must lie in [-1, 1], got {z}"
    );
    (1.0 - (1.0 - z * z).max(0.0).sqrt() * (1.0 - ch.p()).sqrt()) / 2.0
}

/// Binary symmetric channel induced by the symmetric two-state encoding at
/// coordinate `z`; its flip probability [`m2_flip_probability`] depends on
/// the damping only, not on the environment excitation.
///
/// ```
/// use gadq::channel::GadcParams;
/// use gadq::induced::m2_channel;
/// // No damping, equatorial pair: the induced channel is noiseless.
/// let ch = GadcParams::new(0.0, 0.4).unwrap();
/// let m2 = m2_channel(&ch, 0.0);
/// assert_eq!(m2.matrix(), [[1.0, 0.0], [0.0, 1.0]]);
/// ```
pub fn m2_channel(ch: &GadcParams, z: f64) -> BinaryChannel {
    let q = m2_flip_probability(ch, z);
    BinaryChannel::new([[1.0 - q, q], [q, 1.0 - q]])
        .expect("BSC transition matrix is stochastic by construction")
}

/// Capacity of a binary symmetric channel with flip probability `q`:
/// `1 − h(q)`. Errors if `q` lies outside `[0, 1]` beyond round-off.
pub fn bsc_capacity(q: f64) -> Result<f64> {
    crate::channel::binary_entropy(q).map(|h| 1.0 - h)
}

// ---------------------------------------------------------------------------
// Capacities
// ---------------------------------------------------------------------------

/// Capacity of a binary channel by golden-section maximisation of the
/// mutual information over the input prior (concave in the prior), to
/// bracket width `tol`.
pub fn binary_channel_capacity(chan: &BinaryChannel, tol: f64) -> CapacityResult {
    let (a, v) = golden_max(|a| chan.mutual_information(a), 0.0, 1.0, tol);
    CapacityResult {
        capacity: v.max(0.0),
        optimal_input: a,
    }
}

/// Capacity of a binary channel by Blahut–Arimoto alternating maximisation.
///
/// Iterates until the gap between the standard upper and lower capacity
/// bounds falls below `tol` (this bounds the absolute error of the
/// returned value by `tol`, which also caps the per-iteration change).
/// Exceeding `max_iter` returns an iteration-limit error carrying the best
/// iterate so far.
pub fn blahut_arimoto(
    chan: &BinaryChannel,
    tol: f64,
    max_iter: usize,
) -> Result<CapacityResult> {
    let t = chan.matrix();
    let mut prior = [0.5f64, 0.5];
    let mut best = CapacityResult {
        capacity: 0.0,
        optimal_input: 0.5,
    };
    for it in 0..max_iter {
        let w = [
            prior[0] * t[0][0] + prior[1] * t[0][1],
            prior[0] * t[1][0] + prior[1] * t[1][1],
        ];
        // Per-input relative entropy D(t(·|x) || w) in bits.
        let mut d = [0.0f64; 2];
        for (x, dx) in d.iter_mut().enumerate() {
            for y in 0..2 {
                if t[y][x] > 0.0 {
                    *dx += t[y][x] * (t[y][x] / w[y]).log2();
                }
            }
        }
        let lower = prior[0] * d[0] + prior[1] * d[1];
        let upper = d[0].max(d[1]);
        best = CapacityResult {
            capacity: lower.max(0.0),
            optimal_input: prior[1],
        };
        if upper - lower < tol {
            return Ok(best);
        }
        let _ = it;
        let unnorm = [prior[0] * d[0].exp2(), prior[1] * d[1].exp2()];
        let norm = unnorm[0] + unnorm[1];
        prior = [unnorm[0] / norm, unnorm[1] / norm];
    }
    Err(GadqError::IterationLimit {
        iterations: max_iter,
        best,
    })
}

/// Additive advantage of the optimal symmetric-encoding Holevo information
/// over the best binary symmetric channel the encoding induces:
/// `Δ(p, n) = χ(p, n) − C(M2 at z = 0)`.
///
/// Non-negative everywhere; zero at `n = 1/2`.
pub fn induced_gap(ch: &GadcParams, tol: f64) -> f64 {
    let chi = holevo_gadc(ch, tol).chi;
    let c2 = bsc_capacity(m2_flip_probability(ch, 0.0))
        .expect("flip probability lies in [0, 1]");
    chi - c2
}
