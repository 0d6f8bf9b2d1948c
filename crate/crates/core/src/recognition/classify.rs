//! Ligand classification against a receptor eigenbasis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmath::{DensityMatrix, StateVector};

use super::conditional::overlaps;
use super::{
    swap_distribute, ConformationRegister, EigenBasis, LigandProfile, RecognitionOutcome,
    Verdict, INTER_LABELS,
};

/// Eigenstate overlaps <eps_j|state> of a two-qubit bond state.
///
/// The overlaps square-sum to one; a state with residual weight outside the
/// eigenbasis span is rejected.
pub fn decompose_in_eigenbasis(
    state: &StateVector,
    basis: &EigenBasis,
) -> Result<[Complex64; 3]> {
    overlaps(state, basis)
}

/// Decides whether a ligand acts as an agonist of the receptor basis.
///
/// The ligand's amplitude triple is written onto the intramolecular pair and
/// decomposed over the eigenstates. A single overlap weight within `tol` of
/// one marks a definite conformational response, except for the ground
/// eigenstate, which leaves the receptor resting; everything else decoheres
/// into a branch mixture and reads as an antagonist. A ligand sitting
/// exactly on the ground eigenstate is therefore an antagonist here even
/// though its record is sharp.
pub fn classify(
    ligand: &LigandProfile,
    basis: &EigenBasis,
    tol: f64,
) -> Result<RecognitionOutcome> {
    if !(tol > 0.0 && tol < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "classification tolerance must sit in (0, 0.5), got {tol}"
        )));
    }
    let state = swap_distribute(ligand, basis)?;
    let lambda = decompose_in_eigenbasis(&state, basis)?;
    let weights: Vec<f64> = lambda.iter().map(|l| l.norm_sqr()).collect();

    let (jmax, wmax) = weights
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(j, w)| (j + 1, *w))
        .unwrap();

    let verdict = if wmax >= 1.0 - tol && jmax != 1 {
        Verdict::Agonist(vec![jmax])
    } else {
        Verdict::Antagonist
    };

    let labels = ConformationRegister::default_triplet();
    let conformation_distribution = labels
        .labels()
        .iter()
        .cloned()
        .zip(weights.iter().copied())
        .collect();

    Ok(RecognitionOutcome {
        verdict,
        conformation_distribution,
        // Round-off can push wmax a hair past one; a residual is not
        // allowed to go negative.
        coherence_residual: (1.0 - wmax).max(0.0),
    })
}

/// Default classification tolerance.
pub const CLASSIFY_TOL: f64 = 1e-6;

/// Reduced states of the docked intermolecular pair.
///
/// Returns the marginal on the ligand-side qubit and the one on the
/// receptor-side qubit, in that order.
pub fn reduced_marginals(ligand: &LigandProfile) -> Result<(DensityMatrix, DensityMatrix)> {
    let state = ligand.bond_state(&INTER_LABELS)?;
    let rho = DensityMatrix::from_pure(&state);
    let ligand_side = rho.partial_trace(&[INTER_LABELS[0]])?;
    let receptor_side = rho.partial_trace(&[INTER_LABELS[1]])?;
    Ok((ligand_side, receptor_side))
}
