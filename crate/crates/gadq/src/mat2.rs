//! Minimal complex 2×2 matrix arithmetic.
//!
//! Everything in this crate lives on a single qubit, so a fixed-size matrix
//! type with the handful of operations the channel algebra needs (products,
//! adjoints, traces, Hermitian eigenstructure) keeps the numerics transparent
//! and allocation-free.

use num_complex::Complex64;

/// A dense complex 2×2 matrix, row-major: `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    /// Entries in row-major order.
    pub m: [[Complex64; 2]; 2],
}

/// Convenience constructor for a complex scalar.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Matrix2 {
    /// Builds a matrix from rows `[[a, b], [c, d]]`.
    pub fn new(a: Complex64, b: Complex64, cc: Complex64, d: Complex64) -> Self {
        Matrix2 { m: [[a, b], [cc, d]] }
    }

    /// Builds a matrix from real entries.
    pub fn from_real(a: f64, b: f64, cc: f64, d: f64) -> Self {
        Self::new(c(a, 0.0), c(b, 0.0), c(cc, 0.0), c(d, 0.0))
    }

    /// The zero matrix.
    pub fn zero() -> Self {
        Self::from_real(0.0, 0.0, 0.0, 0.0)
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        Self::from_real(1.0, 0.0, 0.0, 1.0)
    }

    /// Diagonal matrix with real entries.
    pub fn diag(a: f64, d: f64) -> Self {
        Self::from_real(a, 0.0, 0.0, d)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        Matrix2 { m: out }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix2 {
        Matrix2::new(
            self.m[0][0].conj(),
            self.m[1][0].conj(),
            self.m[0][1].conj(),
            self.m[1][1].conj(),
        )
    }

    /// Entry-wise sum.
    pub fn add(&self, rhs: &Matrix2) -> Matrix2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += rhs.m[i][j];
            }
        }
        out
    }

    /// Entry-wise difference.
    pub fn sub(&self, rhs: &Matrix2) -> Matrix2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] -= rhs.m[i][j];
            }
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, s: f64) -> Matrix2 {
        let mut out = *self;
        for row in out.m.iter_mut() {
            for cell in row.iter_mut() {
                *cell *= s;
            }
        }
        out
    }

    /// Trace.
    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Largest absolute deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let d = self.sub(&self.adjoint());
        d.max_abs()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry-wise distance to `rhs`.
    pub fn distance(&self, rhs: &Matrix2) -> f64 {
        self.sub(rhs).max_abs()
    }

    /// Decomposes a Hermitian matrix as `c·I + v·σ` and returns `(c, v)`
    /// where `σ = (σx, σy, σz)` are the Pauli matrices.
    ///
    /// Only the Hermitian part of the input participates; callers are
    /// expected to pass matrices that are Hermitian up to round-off.
    pub fn pauli_decompose(&self) -> (f64, [f64; 3]) {
        let c0 = 0.5 * (self.m[0][0].re + self.m[1][1].re);
        let vx = 0.5 * (self.m[1][0].re + self.m[0][1].re);
        let vy = 0.5 * (self.m[1][0].im - self.m[0][1].im);
        let vz = 0.5 * (self.m[0][0].re - self.m[1][1].re);
        (c0, [vx, vy, vz])
    }

    /// Eigenvalues of a Hermitian matrix, in descending order.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let (c0, v) = self.pauli_decompose();
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        [c0 + r, c0 - r]
    }
}

/// Assembles `c·I + v·σ` from Pauli coordinates.
pub fn from_pauli(c0: f64, v: [f64; 3]) -> Matrix2 {
    Matrix2::new(
        c(c0 + v[2], 0.0),
        c(v[0], -v[1]),
        c(v[0], v[1]),
        c(c0 - v[2], 0.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_adjoint() {
        let a = Matrix2::new(c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0), c(0.0, -1.0));
        let id = Matrix2::identity();
        assert_eq!(a.mul(&id), a);
        let aa = a.adjoint().adjoint();
        assert!(a.distance(&aa) == 0.0);
    }

    #[test]
    fn pauli_roundtrip() {
        let m = from_pauli(0.3, [0.1, -0.2, 0.7]);
        let (c0, v) = m.pauli_decompose();
        assert!((c0 - 0.3).abs() < 1e-15);
        assert!((v[0] - 0.1).abs() < 1e-15);
        assert!((v[1] + 0.2).abs() < 1e-15);
        assert!((v[2] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn hermitian_eigenvalues_of_sigma_z() {
        let sz = Matrix2::diag(1.0, -1.0);
        let ev = sz.hermitian_eigenvalues();
        assert_eq!(ev, [1.0, -1.0]);
    }
}
