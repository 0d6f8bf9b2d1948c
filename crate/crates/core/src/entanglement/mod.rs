//! Entanglement quantifiers.
//!
//! Pure states get the entropy of entanglement across a labeled cut. Mixed
//! two-qubit states get the closed-form concurrence route to entanglement
//! of formation. Everything else goes through `eof_minimize`, a convex-roof
//! search over pure-state decompositions parameterized by isometries on a
//! purification.
//!
//! All entropies are in bits.

mod pure;
mod roof;
mod two_qubit;

pub use pure::entropy_of_entanglement;
pub use roof::{eof_minimize, RoofOptions, RoofResult};
pub use two_qubit::{concurrence_2q, eof_2q};

use crate::error::{Error, Result};
use crate::qmath::{DensityMatrix, StateVector};

/// Weighted pure-state decomposition of a density matrix.
#[derive(Debug, Clone)]
pub struct DecompositionEnsemble {
    members: Vec<(f64, StateVector)>,
}

impl DecompositionEnsemble {
    pub fn new(members: Vec<(f64, StateVector)>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidArgument("empty ensemble".into()));
        }
        let sum: f64 = members.iter().map(|(w, _)| *w).sum();
        if members.iter().any(|(w, _)| *w < 0.0) {
            return Err(Error::InvalidArgument("negative ensemble weight".into()));
        }
        if (sum - 1.0).abs() > crate::tol::STRUCTURAL {
            return Err(Error::NotNormalized {
                deviation: (sum - 1.0).abs(),
            });
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, StateVector)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Largest entry-wise deviation between the reconstructed mixture and a
    /// reference state.
    pub fn reconstruction_error(&self, rho: &DensityMatrix) -> f64 {
        let dim = rho.dim();
        let mut dev: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = num_complex::Complex64::ZERO;
                for (w, psi) in &self.members {
                    acc += psi.amplitudes()[i] * psi.amplitudes()[j].conj() * *w;
                }
                dev = dev.max((acc - rho.matrix()[(i, j)]).norm());
            }
        }
        dev
    }

    /// Ensemble average of the entropy of entanglement across a cut.
    pub fn average_entanglement(&self, cut: &[&str]) -> Result<f64> {
        let mut acc = 0.0;
        for (w, psi) in &self.members {
            if *w > 0.0 {
                acc += w * entropy_of_entanglement(psi, cut)?;
            }
        }
        Ok(acc)
    }
}
