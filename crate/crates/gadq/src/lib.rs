//! Classical capacities of the generalized amplitude damping (GAD) qubit
//! channel, the binary classical channels it induces under fixed encodings,
//! and the capacity of a GAD channel whose damping grows with the waiting
//! time of qubits in a single-server queue.
//!
//! The crate is organised in layers:
//!
//! - [`channel`] — the channel itself: Bloch-vector and density-matrix
//!   representations, Kraus operators, qubit entropies, and the
//!   entanglement-breaking region.
//! - [`holevo`] — the one-shot Holevo information over the standard
//!   two-state ensemble, by dense-grid search with golden-section refinement
//!   and by an independent stationarity (fixed-point) solver.
//! - [`induced`] — the classical binary channels obtained from basis-state
//!   and symmetric two-state encodings, Helstrom measurement projectors,
//!   capacities by concave 1-D maximisation and by Blahut–Arimoto.
//! - [`queueing`] — single-server FIFO queue simulation (Lindley recursion)
//!   with reproducible seeded streams, plus analytic stationary sojourn laws
//!   for M/M/1 and G/M/1.
//! - [`queue_capacity`] — per-qubit capacity under waiting-time-dependent
//!   damping, Monte Carlo and series evaluations, arrival-rate optimisation,
//!   and service/arrival distribution comparisons.
//!
//! Heavy grid evaluations and Monte Carlo reductions run on a rayon thread
//! pool when the `parallel` feature (default) is enabled; disabling it gives
//! a fully sequential build with bit-identical numerical results (see
//! [`parallel`]).
//!
//! # Example
//!
//! ```
//! use gadq::channel::GadcParams;
//! use gadq::holevo::{holevo_gadc, holevo_symmetric};
//!
//! let ch = GadcParams::new(0.3, 0.5).unwrap();
//! let res = holevo_gadc(&ch, 1e-9);
//! // At n = 1/2 the one-shot Holevo information has a closed form.
//! assert!((res.chi - holevo_symmetric(0.3).unwrap()).abs() < 1e-6);
//! ```

pub mod channel;
pub mod error;
pub mod holevo;
pub mod induced;
pub mod mat2;
pub mod optimize;
pub mod parallel;
pub mod queue_capacity;
pub mod queueing;
pub mod report;
pub mod stats;
pub mod tolerance;
pub mod verify;

pub use error::GadqError;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, GadqError>;
