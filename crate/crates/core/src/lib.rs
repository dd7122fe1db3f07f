//! Quantum probability for decision variables.
//!
//! Decision questions are modeled as self-adjoint operators on a small
//! complex Hilbert space. The crate computes Born probabilities, Lüders
//! collapse and measurement chains, expectations, likelihood effects, and
//! density reconstruction from effect probabilities; it quantifies
//! conjunction, order, total-probability and sure-thing effects; and it
//! ships a planar hidden-variable spin model for comparison with the
//! quantum conditional. A JSON scenario format and the `qdecision` CLI sit
//! on top.
//!
//! Module map:
//!
//! - [`linalg`]: matrices, states, projectors, densities, effects, and the Jacobi eigensolver.
//! - [`variable`]: decision variables with spectral data; maximality; unitary relations.
//! - [`born`]: probabilities, collapse, expectations, likelihood effects, reconstruction.
//! - [`phenomena`]: conjunction, order, interference and sure-thing reports.
//! - [`spin`]: the hidden-variable spin model and Monte Carlo estimates.
//! - [`scenario`]: scenario documents, query execution, and report emission.

pub mod born;
pub mod error;
pub mod linalg;
pub mod phenomena;
pub mod random;
pub mod scenario;
pub mod spin;
pub mod tolerance;
pub mod variable;

pub use error::{Error, Result};
pub use tolerance::Tolerances;

/// Version string recorded in reports.
pub const ENGINE_VERSION: &str = concat!("qdecision ", env!("CARGO_PKG_VERSION"));
