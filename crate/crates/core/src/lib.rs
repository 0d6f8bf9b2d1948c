//! Quantum models of chemical bonding built on small labeled registers.
//!
//! The crate is layered:
//!
//! * [`qmath`]: labeled qubit/qutrit registers, pure states and density
//!   matrices, spectral helpers, projective measurement, seeded random
//!   ensembles.
//! * [`bonds`]: covalent and hydrogen-bond state constructors in both the
//!   electron (valence-bond) and proton (tunneling) pictures, plus the
//!   polarization step that builds ionic weight during bond formation.
//! * [`entanglement`]: entropy of entanglement across any register cut,
//!   the two-qubit concurrence closed form, and a convex-roof minimizer for
//!   the entanglement of formation of mixed states.
//! * [`environment`]: eigensystem bookkeeping, thermal mixtures over a
//!   tunneling spectrum, and projective dephasing.
//! * [`recognition`]: the receptor machinery: eigenbasis handover by an
//!   entanglement swap, conditional conformational dynamics, ligand
//!   classification, and response-counting arithmetic.
//!
//! Registers keep explicit subsystem labels, so cuts, partial traces and
//! local operations are always named rather than positional.

pub mod bonds;
pub mod entanglement;
pub mod environment;
pub mod error;
pub mod qmath;
pub mod recognition;
pub mod tol;

pub use error::{Error, Result};
