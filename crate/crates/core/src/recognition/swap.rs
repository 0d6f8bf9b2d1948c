//! Entanglement handover from an intermolecular bond to the receptor's
//! intramolecular one.
//!
//! A docking ligand shares the pair state c1|10> + c2|01> with the receptor
//! atom X1 across the (X_N, X1) cut. Measuring X_N in the delocalized pair
//! basis, undoing the minus branch with a sign flip, and letting X1 relax
//! jointly with X2 leaves the same coefficients on the intramolecular
//! (X1, X2) pair, whatever the measurement returned.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmath::{
    measure_projective, project_onto, LocalBasis, RegisterLayout, StateVector,
};
use crate::tol;

use super::{EigenBasis, LigandProfile, INTER_LABELS, INTRA_LABELS};

/// What happened during one handover run.
#[derive(Debug, Clone)]
pub struct SwapTranscript {
    /// 0 for the symmetric bridge outcome, 1 for the antisymmetric one.
    pub outcome: usize,
    pub outcome_label: char,
    pub probability: f64,
    /// True when the antisymmetric branch needed its sign flip.
    pub corrected: bool,
}

/// Final intramolecular pair state plus the run transcript.
#[derive(Debug, Clone)]
pub struct SwapOutcome {
    pub final_state: StateVector,
    pub transcript: SwapTranscript,
}

/// Bridging-proton qubit resting in (|1> - |0>)/sqrt(2), labeled x2.
pub fn resting_bridge_state() -> StateVector {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    StateVector::new(RegisterLayout::qubits(&["x2"]).unwrap(), vec![-s, s]).unwrap()
}

/// Joint relaxation of the (X1, X2) pair after the bridge measurement.
///
/// Rows and columns are indexed over the (X1, X2) basis (00, 01, 10, 11);
/// the map sends the corrected post-measurement state with coefficients
/// (c1, c2) to c1|01> + c2|10>.
pub fn swap_completion_unitary() -> DMatrix<Complex64> {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = Complex64::ZERO;
    DMatrix::from_row_slice(
        4,
        4,
        &[
            s, s, z, z, //
            -s, s, z, z, //
            z, z, -s, s, //
            z, z, s, s,
        ],
    )
}

fn intermolecular_pair(ligand: &LigandProfile) -> Result<StateVector> {
    if ligand.coeffs.c3.norm() > tol::STRUCTURAL {
        return Err(Error::InvalidArgument(format!(
            "ligand {} keeps weight {:.3e} on the unbonded configuration; the \
             handover needs c3 = 0",
            ligand.name,
            ligand.coeffs.c3.norm()
        )));
    }
    ligand.bond_state(&INTER_LABELS)
}

fn run(
    ligand: &LigandProfile,
    x2_init: &StateVector,
    pick: impl FnOnce(&StateVector, &LocalBasis) -> Result<(usize, f64, StateVector)>,
) -> Result<SwapOutcome> {
    if x2_init.layout().dims() != [2] {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: x2_init.dim(),
        });
    }
    let pair = intermolecular_pair(ligand)?;
    let bridge = x2_init.relabeled(&["x2"])?;
    let joint = pair.tensor(&bridge)?;

    let basis = LocalBasis::plus_minus();
    let (outcome, probability, post) = pick(&joint, &basis)?;

    // Drop the measured ligand qubit; the factor contracts away exactly.
    let (rest, norm) = post.contract("xn", basis.vector(outcome))?;
    debug_assert!((norm - 1.0).abs() < 1e-12);
    let rest = rest.renormalized()?;

    // The antisymmetric outcome flips the sign of the excited X1 component;
    // a Pauli Z on X1 restores the symmetric-branch state.
    let corrected = outcome == 1;
    let rest = if corrected {
        let z = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::ONE,
                Complex64::ZERO,
                Complex64::ZERO,
                -Complex64::ONE,
            ],
        );
        rest.apply_local("x1", &z)?
    } else {
        rest
    };

    let final_state = rest.apply_matrix(&swap_completion_unitary())?;
    Ok(SwapOutcome {
        final_state,
        transcript: SwapTranscript {
            outcome,
            outcome_label: if outcome == 0 { '+' } else { '-' },
            probability,
            corrected,
        },
    })
}

/// Runs the handover with a sampled bridge measurement.
///
/// The final state is c1|01> + c2|10> over the intramolecular (x1, x2) pair
/// for either outcome; only the transcript depends on the draw.
pub fn swap_protocol(
    ligand: &LigandProfile,
    x2_init: &StateVector,
    seed: u64,
) -> Result<SwapOutcome> {
    run(ligand, x2_init, |joint, basis| {
        let record = measure_projective(joint, "xn", basis, seed)?;
        Ok((record.outcome, record.probability, record.post_state))
    })
}

/// Runs the handover conditioning on a chosen bridge outcome.
pub fn swap_protocol_on_outcome(
    ligand: &LigandProfile,
    x2_init: &StateVector,
    outcome: usize,
) -> Result<SwapOutcome> {
    run(ligand, x2_init, |joint, basis| {
        let (post, probability) = project_onto(joint, "xn", basis, outcome)?;
        Ok((outcome, probability, post))
    })
}

/// Writes the full ligand amplitude triple onto the intramolecular pair.
///
/// Idealized limit of the handover: the output carries c1|10> + c2|01> +
/// c3|00> over (x2, x1), donor first, and decomposes in `basis` with unit
/// total weight.
pub fn swap_distribute(ligand: &LigandProfile, basis: &EigenBasis) -> Result<StateVector> {
    let state = ligand.bond_state(&INTRA_LABELS)?;
    let lambda = super::conditional::overlaps(&state, basis)?;
    debug_assert!(
        (lambda.iter().map(|l| l.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-9
    );
    Ok(state)
}
