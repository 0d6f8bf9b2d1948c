//! Linear algebra over labeled qubit/qutrit registers.
//!
//! A register is an ordered list of labeled subsystems with local dimension
//! 2 or 3; the first subsystem is the most significant index digit. States
//! and density matrices validate their defining invariants on construction
//! and every operation states which register it acts on by label, never by
//! position alone.

mod density;
mod layout;
mod measure;
pub mod random;
mod spectral;
mod state;

pub use density::{embed_local, hermiticity_deviation, DensityMatrix};
pub use layout::RegisterLayout;
pub use measure::{
    branch_probabilities, measure_projective, project_onto, LocalBasis, MeasurementRecord,
};
pub use spectral::{
    binary_entropy, eig_hermitian, fidelity, orthonormality_deviation, shannon_entropy,
    von_neumann_entropy,
};
pub use state::StateVector;
