//! The generalized amplitude damping (GAD) qubit channel.
//!
//! The channel `A(p, n)` models energy exchange with a thermal environment:
//! `p` is the damping strength and `n` the excited-state population of the
//! bath. On the Bloch ball it acts affinely,
//!
//! ```text
//! (x, y, z) -> (sqrt(1-p)·x, sqrt(1-p)·y, (1-p)·z + p·(1-2n)),
//! ```
//!
//! shrinking transverse components by `sqrt(1-p)` and pulling the poles
//! toward the thermal fixed point `z = 1-2n`. The same action is available
//! through the four Kraus operators returned by [`kraus_operators`]; the two
//! representations agree to round-off and the tests pin that down.

use crate::error::GadqError;
use crate::mat2::{c, from_pauli, Matrix2};
use crate::tolerance::{ENTROPY_CLAMP, STRUCTURAL_TOL};
use crate::Result;

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

/// Parameters `(p, n)` of a generalized amplitude damping channel.
///
/// Both lie in `[0, 1]`: `p` is the damping probability, `n` the thermal
/// occupation of the environment. `n = 0` is pure amplitude damping toward
/// `|0⟩`, `n = 1/2` is the unital case, `n = 1` damps toward `|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadcParams {
    p: f64,
    n: f64,
}

impl GadcParams {
    /// Validates and stores channel parameters.
    ///
    /// Values straying outside `[0, 1]` by at most `1e-12` are clamped onto
    /// the boundary (this absorbs round-off from parameter grids); anything
    /// farther out is a domain error.
    ///
    /// ```
    /// use gadq::channel::GadcParams;
    /// assert!(GadcParams::new(0.5, 0.25).is_ok());
    /// assert!(GadcParams::new(1.5, 0.25).is_err());
    /// ```
    pub fn new(p: f64, n: f64) -> Result<Self> {
        Ok(GadcParams {
            p: clamp_unit("p", p)?,
            n: clamp_unit("n", n)?,
        })
    }

    /// Damping strength `p`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Environment excitation `n`.
    pub fn n(&self) -> f64 {
        self.n
    }

    /// The channel with `n` reflected about `1/2`; conjugation by `σx`
    /// relates the two, so every capacity in this crate is invariant under
    /// this swap.
    pub fn reflected(&self) -> GadcParams {
        GadcParams {
            p: self.p,
            n: 1.0 - self.n,
        }
    }
}

fn clamp_unit(name: &str, v: f64) -> Result<f64> {
    if !v.is_finite() || v < -STRUCTURAL_TOL || v > 1.0 + STRUCTURAL_TOL {
        return Err(GadqError::domain(format!(
            "{name} must lie in [0, 1], got {v}"
        )));
    }
    Ok(v.clamp(0.0, 1.0))
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

/// A qubit state as a point of the (closed) Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    /// σx coordinate.
    pub x: f64,
    /// σy coordinate.
    pub y: f64,
    /// σz coordinate.
    pub z: f64,
}

impl BlochVector {
    /// Validates that the point lies in the Bloch ball (norm at most
    /// `1 + 1e-12`, to absorb round-off on the sphere).
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = BlochVector { x, y, z };
        if !v.norm().is_finite() || v.norm() > 1.0 + STRUCTURAL_TOL {
            return Err(GadqError::domain(format!(
                "Bloch vector norm {} exceeds 1",
                v.norm()
            )));
        }
        Ok(v)
    }

    /// Euclidean norm (purity measure: 1 on the sphere, 0 at the centre).
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// The pure state `cos(θ/2)|0⟩ + sin(θ/2)|1⟩` at azimuth 0 with
    /// `cos θ = z`: Bloch point `(sqrt(1-z²), 0, z)`.
    pub fn xz_pure(z: f64, sign: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&z) {
            return Err(GadqError::domain(format!("z must lie in [-1, 1], got {z}")));
        }
        BlochVector::new(sign.signum() * (1.0 - z * z).max(0.0).sqrt(), 0.0, z)
    }
}

/// A qubit density matrix: Hermitian, unit trace, positive semidefinite
/// (all up to `1e-12`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    mat: Matrix2,
}

impl DensityMatrix {
    /// Validates a candidate density matrix.
    pub fn new(mat: Matrix2) -> Result<Self> {
        if mat.hermitian_defect() > STRUCTURAL_TOL {
            return Err(GadqError::domain(format!(
                "density matrix is not Hermitian (defect {})",
                mat.hermitian_defect()
            )));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STRUCTURAL_TOL || tr.im.abs() > STRUCTURAL_TOL {
            return Err(GadqError::domain(format!(
                "density matrix trace must be 1, got {tr}"
            )));
        }
        let ev = mat.hermitian_eigenvalues();
        if ev[1] < -STRUCTURAL_TOL {
            return Err(GadqError::domain(format!(
                "density matrix has negative eigenvalue {}",
                ev[1]
            )));
        }
        Ok(DensityMatrix { mat })
    }

    /// The matrix `(I + r·σ)/2` for a Bloch point `r`.
    pub fn from_bloch(r: &BlochVector) -> Result<Self> {
        // Renormalise norms within round-off of 1 so the PSD check cannot
        // trip on sphere states produced by upstream arithmetic.
        DensityMatrix::new(from_pauli(0.5, [0.5 * r.x, 0.5 * r.y, 0.5 * r.z]))
    }

    /// Bloch coordinates `(tr(ρσx), tr(ρσy), tr(ρσz))`.
    pub fn to_bloch(&self) -> BlochVector {
        let (_, v) = self.mat.pauli_decompose();
        BlochVector {
            x: 2.0 * v[0],
            y: 2.0 * v[1],
            z: 2.0 * v[2],
        }
    }

    /// The computational basis state `|0⟩⟨0|` (`b = 0`) or `|1⟩⟨1|` (`b = 1`).
    pub fn basis(b: u8) -> Self {
        let z = if b == 0 { 1.0 } else { -1.0 };
        DensityMatrix {
            mat: from_pauli(0.5, [0.0, 0.0, 0.5 * z]),
        }
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &Matrix2 {
        &self.mat
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        let ev = self.mat.hermitian_eigenvalues();
        h_clamped(ev[1].clamp(0.0, 1.0))
    }
}

// ---------------------------------------------------------------------------
// Entropies
// ---------------------------------------------------------------------------

/// Binary Shannon entropy `h(x) = -x log2 x - (1-x) log2 (1-x)` in bits,
/// with the `0·log 0 = 0` convention.
///
/// Arguments within `1e-12` of the boundary are clamped onto it; anything
/// outside `[0, 1]` beyond that is a domain error.
///
/// ```
/// use gadq::channel::binary_entropy;
/// assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
/// assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
/// ```
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !x.is_finite() || x < -ENTROPY_CLAMP || x > 1.0 + ENTROPY_CLAMP {
        return Err(GadqError::domain(format!(
            "entropy argument must lie in [0, 1], got {x}"
        )));
    }
    Ok(h_clamped(x.clamp(0.0, 1.0)))
}

/// Internal entropy kernel for arguments already known to lie in `[0, 1]`.
pub(crate) fn h_clamped(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -(x * x.log2() + (1.0 - x) * (1.0 - x).log2())
}

/// Entropy in bits of the qubit state with Bloch norm `r`:
/// `h((1 - r)/2)`. Errors if `r` exceeds 1 beyond round-off.
pub fn qubit_entropy(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 || r > 1.0 + STRUCTURAL_TOL {
        return Err(GadqError::domain(format!(
            "Bloch norm must lie in [0, 1], got {r}"
        )));
    }
    Ok(h_clamped((1.0 - r.min(1.0)) / 2.0))
}

// ---------------------------------------------------------------------------
// Channel action
// ---------------------------------------------------------------------------

/// The four Kraus operators of a GAD channel.
#[derive(Debug, Clone, Copy)]
pub struct KrausSet {
    /// Operators `K0..K3` satisfying `Σ Kᵢ† Kᵢ = I`.
    pub ops: [Matrix2; 4],
}

impl KrausSet {
    /// Largest entry of `Σ Kᵢ† Kᵢ − I`; zero up to round-off for a valid set.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = Matrix2::zero();
        for k in &self.ops {
            sum = sum.add(&k.adjoint().mul(k));
        }
        sum.distance(&Matrix2::identity())
    }

    /// Applies the channel to `rho` as `Σ Kᵢ ρ Kᵢ†`.
    pub fn apply(&self, rho: &Matrix2) -> Matrix2 {
        let mut out = Matrix2::zero();
        for k in &self.ops {
            out = out.add(&k.mul(rho).mul(&k.adjoint()));
        }
        out
    }
}

/// Kraus operators of `A(p, n)`:
///
/// ```text
/// K0 = sqrt(1-n) (|0⟩⟨0| + sqrt(1-p)|1⟩⟨1|),   K1 = sqrt(p(1-n)) |0⟩⟨1|,
/// K2 = sqrt(n)   (sqrt(1-p)|0⟩⟨0| + |1⟩⟨1|),   K3 = sqrt(pn)     |1⟩⟨0|.
/// ```
pub fn kraus_operators(ch: &GadcParams) -> KrausSet {
    let (p, n) = (ch.p(), ch.n());
    let sp = (1.0 - p).sqrt();
    let k0 = Matrix2::diag(1.0, sp).scale((1.0 - n).sqrt());
    let k1 = Matrix2::new(c(0.0, 0.0), c((p * (1.0 - n)).sqrt(), 0.0), c(0.0, 0.0), c(0.0, 0.0));
    let k2 = Matrix2::diag(sp, 1.0).scale(n.sqrt());
    let k3 = Matrix2::new(c(0.0, 0.0), c(0.0, 0.0), c((p * n).sqrt(), 0.0), c(0.0, 0.0));
    KrausSet {
        ops: [k0, k1, k2, k3],
    }
}

/// Affine Bloch-ball action of `A(p, n)`.
///
/// ```
/// use gadq::channel::{apply_gadc_bloch, BlochVector, GadcParams};
/// // The unital channel (n = 1/2) fixes the maximally mixed state.
/// let ch = GadcParams::new(0.7, 0.5).unwrap();
/// let out = apply_gadc_bloch(&ch, &BlochVector::new(0.0, 0.0, 0.0).unwrap());
/// assert_eq!((out.x, out.y, out.z), (0.0, 0.0, 0.0));
/// ```
pub fn apply_gadc_bloch(ch: &GadcParams, r: &BlochVector) -> BlochVector {
    let (p, n) = (ch.p(), ch.n());
    let sp = (1.0 - p).sqrt();
    BlochVector {
        x: sp * r.x,
        y: sp * r.y,
        z: (1.0 - p) * r.z + p * (1.0 - 2.0 * n),
    }
}

/// Applies `A(p, n)` to a density matrix through its Kraus representation.
///
/// Agrees with [`apply_gadc_bloch`] through the Bloch round-trip to
/// round-off; the property tests assert the match at `1e-12`.
pub fn apply_gadc_density(ch: &GadcParams, rho: &DensityMatrix) -> DensityMatrix {
    let out = kraus_operators(ch).apply(rho.matrix());
    DensityMatrix::new(out).expect("CPTP image of a density matrix is a density matrix")
}

// ---------------------------------------------------------------------------
// Entanglement breaking
// ---------------------------------------------------------------------------

/// Whether `A(p, n)` is entanglement breaking.
///
/// The region is `p ≥ 2(√2 − 1)` together with
/// `(1 − l(p))/2 ≤ n ≤ (1 + l(p))/2` where
/// `l(p) = sqrt((p² + 4p − 4)/p²)`.
///
/// ```
/// use gadq::channel::{is_entanglement_breaking, GadcParams};
/// assert!(is_entanglement_breaking(&GadcParams::new(1.0, 0.5).unwrap()));
/// assert!(!is_entanglement_breaking(&GadcParams::new(0.5, 0.5).unwrap()));
/// ```
pub fn is_entanglement_breaking(ch: &GadcParams) -> bool {
    let (p, n) = (ch.p(), ch.n());
    let disc = p * p + 4.0 * p - 4.0;
    if disc < 0.0 {
        // p below 2(√2 − 1): no n makes the channel entanglement breaking.
        return false;
    }
    if p == 0.0 {
        return false;
    }
    let l = disc.sqrt() / p;
    let lo = (1.0 - l) / 2.0;
    let hi = (1.0 + l) / 2.0;
    (lo..=hi).contains(&n)
}

/// Smallest damping `p` at which `A(p, n)` becomes entanglement breaking,
/// for fixed environment excitation `n`.
///
/// Defined on `n ∈ (0, 1)` using the `n ↔ 1-n` symmetry of the region;
/// `n = 0` (and `n = 1`) never break entanglement at `p < 1`, so the
/// threshold is a domain error there. On `n ∈ (0, 1/2]`:
///
/// ```text
/// p*(n) = max( 2(√2 − 1), (sqrt(1 + 4n(1-n)) − 1) / (2n(1-n)) ).
/// ```
pub fn ebt_threshold(n: f64) -> Result<f64> {
    if !n.is_finite() || n <= 0.0 || n >= 1.0 {
        return Err(GadqError::domain(format!(
            "entanglement-breaking threshold needs n in (0, 1), got {n}"
        )));
    }
    let n = n.min(1.0 - n);
    let q = n * (1.0 - n);
    let band = ((1.0 + 4.0 * q).sqrt() - 1.0) / (2.0 * q);
    Ok(band.max(2.0 * (2.0f64.sqrt() - 1.0)))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
