//! Molecular-recognition machinery.
//!
//! A receptor's intramolecular hydrogen bond has three orthogonal tunneling
//! eigenstates; which one it settles in decides the receptor conformation.
//! A ligand first hands its own bond state to the receptor through an
//! entanglement swap, then conditional dynamics imprints the resulting
//! eigenstate onto a conformational register. A ligand that lands exactly
//! on one excited eigenstate triggers a definite conformational response;
//! superpositions decohere and the response breaks down.

mod capacity;
mod classify;
mod conditional;
mod swap;

pub use capacity::{capacity, min_bonds, MinBonds};
pub use classify::{classify, decompose_in_eigenbasis, reduced_marginals, CLASSIFY_TOL};
pub use conditional::{
    conformation_branch_weights, enumerate_agonists, imprint_conformation,
    imprint_conformations,
};
pub use swap::{
    resting_bridge_state, swap_completion_unitary, swap_distribute, swap_protocol,
    swap_protocol_on_outcome, SwapOutcome, SwapTranscript,
};

use num_complex::Complex64;

use crate::bonds::{unified_state, HBondAmplitudes};
use crate::error::{Error, Result};
use crate::qmath::{orthonormality_deviation, StateVector};
use crate::tol;

/// Intramolecular donor-first qubit pair labels.
pub const INTRA_LABELS: [&str; 2] = ["x2", "x1"];

/// Intermolecular donor-first qubit pair labels.
pub const INTER_LABELS: [&str; 2] = ["xn", "x1"];

fn check_two_qubit_span(state: &StateVector) -> Result<()> {
    if state.layout().dims() != [2, 2] {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: state.dim(),
        });
    }
    let residual = state.amplitudes()[3].norm();
    if residual > tol::STRUCTURAL {
        return Err(Error::SpanViolation { residual });
    }
    Ok(())
}

/// Three orthonormal eigenstates of an intramolecular hydrogen bond, each a
/// two-qubit state with no doubly-bonded component.
///
/// The first eigenstate is the resting (ground) one; settling there drives
/// no conformational response.
#[derive(Debug, Clone)]
pub struct EigenBasis {
    eps: [StateVector; 3],
}

impl EigenBasis {
    pub fn new(eps1: StateVector, eps2: StateVector, eps3: StateVector) -> Result<Self> {
        for state in [&eps1, &eps2, &eps3] {
            check_two_qubit_span(state)?;
        }
        let vectors = [
            eps1.amplitudes().clone(),
            eps2.amplitudes().clone(),
            eps3.amplitudes().clone(),
        ];
        let dev = orthonormality_deviation(&vectors);
        if dev > tol::STRUCTURAL {
            return Err(Error::NotOrthonormal { deviation: dev });
        }
        Ok(Self {
            eps: [eps1, eps2, eps3],
        })
    }

    /// The receptor basis used throughout: ground (|10>-|00>)/sqrt(2), then
    /// (|10>+|01>+|00>)/sqrt(3) and (|10>-2|01>+|00>)/sqrt(6).
    pub fn standard() -> Self {
        let r2 = 2f64.sqrt().recip();
        let r3 = 3f64.sqrt().recip();
        let r6 = 6f64.sqrt().recip();
        let build = |c1: f64, c2: f64, c3: f64| {
            unified_state(&HBondAmplitudes::proton_real(c1, c2, c3).unwrap())
                .unwrap()
                .relabeled(&INTRA_LABELS)
                .unwrap()
        };
        Self {
            eps: [
                build(r2, 0.0, -r2),
                build(r3, r3, r3),
                build(r6, -2.0 * r6, r6),
            ],
        }
    }

    /// Eigenstate by 1-based index.
    pub fn eps(&self, j: usize) -> &StateVector {
        &self.eps[j - 1]
    }

    pub fn states(&self) -> &[StateVector; 3] {
        &self.eps
    }
}

/// A ligand named by its unified hydrogen-bond amplitudes.
#[derive(Debug, Clone)]
pub struct LigandProfile {
    pub name: String,
    pub coeffs: HBondAmplitudes,
}

impl LigandProfile {
    pub fn new<S: Into<String>>(name: S, coeffs: HBondAmplitudes) -> Self {
        Self {
            name: name.into(),
            coeffs,
        }
    }

    /// Agonist whose bond state matches the second receptor eigenstate.
    pub fn ligand_b() -> Self {
        let r3 = 3f64.sqrt().recip();
        Self::new("B", HBondAmplitudes::proton_real(r3, r3, r3).unwrap())
    }

    /// Agonist whose bond state matches the third receptor eigenstate.
    pub fn ligand_c() -> Self {
        let r6 = 6f64.sqrt().recip();
        Self::new("C", HBondAmplitudes::proton_real(r6, -2.0 * r6, r6).unwrap())
    }

    /// Antagonist: a superposition of the two excited eigenstates.
    pub fn ligand_d() -> Self {
        let r6 = 6f64.sqrt().recip();
        Self::new("D", HBondAmplitudes::proton_real(r6, 2.0 * r6, r6).unwrap())
    }

    /// The ligand bond state over the given donor-first qubit labels.
    pub fn bond_state(&self, labels: &[&str; 2]) -> Result<StateVector> {
        unified_state(&self.coeffs)?.relabeled(labels)
    }
}

/// Conformational register slot: ordered basis labels plus amplitudes.
#[derive(Debug, Clone)]
pub struct ConformationRegister {
    labels: Vec<String>,
    amplitudes: Vec<Complex64>,
}

impl ConformationRegister {
    pub fn new(labels: Vec<String>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidArgument("empty conformation register".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if amplitudes.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                actual: amplitudes.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::NotNormalized {
                deviation: (norm - 1.0).abs(),
            });
        }
        Ok(Self { labels, amplitudes })
    }

    /// Register resting in its first conformation.
    pub fn ground(labels: Vec<String>) -> Result<Self> {
        let mut amplitudes = vec![Complex64::ZERO; labels.len()];
        amplitudes[0] = Complex64::ONE;
        Self::new(labels, amplitudes)
    }

    /// Default three-conformation slot chi1, chi2, chi3 at rest.
    pub fn default_triplet() -> Self {
        Self::ground(vec!["chi1".into(), "chi2".into(), "chi3".into()]).unwrap()
    }

    /// `n` resting slots labeled chi1..chi3n, three per slot.
    pub fn slots(n: usize) -> Vec<Self> {
        (0..n)
            .map(|k| {
                Self::ground(
                    (1..=3)
                        .map(|j| format!("chi{}", j + 3 * k))
                        .collect(),
                )
                .unwrap()
            })
            .collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// True when the register sits in its first conformation up to phase.
    pub fn is_resting(&self) -> bool {
        (self.amplitudes[0].norm() - 1.0).abs() <= tol::STRUCTURAL
    }
}

/// Verdict of a recognition attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Definite conformational response; 1-based eigenstate index per bond.
    Agonist(Vec<usize>),
    /// No definite response: resting ground state or a decohering
    /// superposition of responses.
    Antagonist,
}

/// Full result of classifying one ligand.
#[derive(Debug, Clone)]
pub struct RecognitionOutcome {
    pub verdict: Verdict,
    /// Dephased branch weights over the conformation labels.
    pub conformation_distribution: Vec<(String, f64)>,
    /// One minus the largest branch weight.
    pub coherence_residual: f64,
}
