//! Dense complex linear algebra on small Hilbert spaces.

mod eig;
pub(crate) mod lstsq;
mod matrix;
mod operators;
mod state;

pub use eig::{hermitian_eig, hermitian_eig_with, SpectralDecomposition};
pub use matrix::{inner, norm, ComplexMatrix, C64};
pub use operators::{
    projector_onto_span, projector_onto_span_with, spectral_function, tensor_product,
    DensityOperator, Effect, HermitianOperator, Projector,
};
pub use state::StateVector;

pub(crate) use matrix::{ONE, ZERO};
