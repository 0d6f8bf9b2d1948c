//! Conditional conformational dynamics.
//!
//! The receptor records which tunneling eigenstate its bond occupies by
//! shifting a conformational qutrit: eigenstate j sends the resting register
//! to its j-th conformation. On a bond superposition the record entangles
//! with the bond, and the classical conformational response dephases into a
//! weighted mixture of branches.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmath::{RegisterLayout, StateVector};
use crate::tol;

use super::{check_two_qubit_span, ConformationRegister, EigenBasis};

/// Eigenstate overlaps of a two-qubit bond state without the doubly-bonded
/// component.
pub(super) fn overlaps(state: &StateVector, basis: &EigenBasis) -> Result<[Complex64; 3]> {
    check_two_qubit_span(state)?;
    let mut lambda = [Complex64::ZERO; 3];
    let mut total = 0.0;
    for j in 0..3 {
        // Positional inner product; both registers are donor-first pairs.
        lambda[j] = basis.eps(j + 1).amplitudes().dotc(state.amplitudes());
        total += lambda[j].norm_sqr();
    }
    if (total - 1.0).abs() > tol::STRUCTURAL {
        return Err(Error::SpanViolation {
            residual: (total - 1.0).abs(),
        });
    }
    Ok(lambda)
}

/// Entangles a bond state with a resting conformational qutrit.
///
/// The joint output is sum_j <eps_j|bond> |eps_j> (x) |chi_j>, appending one
/// qutrit labeled `conf` whose basis states carry the register's labels.
/// The map is an isometry, so the norm is preserved exactly.
pub fn imprint_conformation(
    bond_state: &StateVector,
    basis: &EigenBasis,
    conformations: &ConformationRegister,
) -> Result<StateVector> {
    imprint_slot(bond_state, basis, conformations, "conf")
}

fn imprint_slot(
    bond_state: &StateVector,
    basis: &EigenBasis,
    conformations: &ConformationRegister,
    slot_label: &str,
) -> Result<StateVector> {
    if conformations.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: conformations.len(),
        });
    }
    if !conformations.is_resting() {
        return Err(Error::InvalidArgument(
            "conformational register must rest in its first state".into(),
        ));
    }
    let lambda = overlaps(bond_state, basis)?;
    let slot = RegisterLayout::qutrits(&[slot_label])?;
    let layout = bond_state.layout().joined(&slot)?;
    let mut amplitudes = vec![Complex64::ZERO; layout.total_dim()];
    for (j, l) in lambda.iter().enumerate() {
        if l.norm_sqr() == 0.0 {
            continue;
        }
        let eps = basis.eps(j + 1).amplitudes();
        for i in 0..4 {
            amplitudes[i * 3 + j] += l * eps[i];
        }
    }
    Ok(StateVector::from_parts_unchecked(
        layout,
        nalgebra::DVector::from_vec(amplitudes),
    ))
}

/// Multi-bond conditional dynamics: each bond gets its own conformational
/// qutrit, and the joint state factorizes over bonds.
///
/// Between one and four bonds are supported. Bond k's qubit labels receive
/// the suffix `_k` whenever labels repeat across inputs, and its qutrit slot
/// is labeled `conf_k` (a single bond keeps `conf` and its original labels,
/// matching [`imprint_conformation`]).
pub fn imprint_conformations(
    bond_states: &[StateVector],
    bases: &[EigenBasis],
    slots: &[ConformationRegister],
) -> Result<StateVector> {
    let n = bond_states.len();
    if n == 0 || n > 4 {
        return Err(Error::InvalidArgument(format!(
            "between 1 and 4 bonds are supported, got {n}"
        )));
    }
    if bases.len() != n || slots.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: bases.len().min(slots.len()),
        });
    }
    if n == 1 {
        return imprint_conformation(&bond_states[0], &bases[0], &slots[0]);
    }

    let mut seen: Vec<&str> = Vec::new();
    let mut collide = false;
    for state in bond_states {
        for label in state.layout().labels() {
            if seen.contains(&label.as_str()) {
                collide = true;
            }
            seen.push(label);
        }
    }

    let mut joint: Option<StateVector> = None;
    for (k, ((state, basis), slot)) in bond_states.iter().zip(bases).zip(slots).enumerate() {
        let state = if collide {
            let labels: Vec<String> = state
                .layout()
                .labels()
                .iter()
                .map(|l| format!("{l}_{}", k + 1))
                .collect();
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            state.relabeled(&refs)?
        } else {
            state.clone()
        };
        let branch = imprint_slot(&state, basis, slot, &format!("conf_{}", k + 1))?;
        joint = Some(match joint {
            None => branch,
            Some(acc) => acc.tensor(&branch)?,
        });
    }
    Ok(joint.unwrap())
}

/// Dephased weights of the conformational record.
///
/// `slot_labels` names the conformational qutrits inside `joint`; the result
/// assigns each index tuple (0-based, one digit per slot) the total
/// probability of its branch. Tuples of weight zero are kept so callers see
/// the full 3^n table.
pub fn conformation_branch_weights(
    joint: &StateVector,
    slot_labels: &[&str],
) -> Result<Vec<(Vec<usize>, f64)>> {
    if slot_labels.is_empty() {
        return Err(Error::TrivialCut);
    }
    let layout = joint.layout();
    let mut positions = Vec::with_capacity(slot_labels.len());
    for label in slot_labels {
        let pos = layout.position(label)?;
        if layout.dims()[pos] != 3 {
            return Err(Error::UnsupportedDimension(layout.dims()[pos]));
        }
        positions.push(pos);
    }
    let tuples: usize = 3usize.pow(slot_labels.len() as u32);
    let mut weights = vec![0.0; tuples];
    for index in 0..layout.total_dim() {
        let digits = layout.digits_of(index);
        let mut key = 0usize;
        for &pos in &positions {
            key = key * 3 + digits[pos];
        }
        weights[key] += joint.amplitudes()[index].norm_sqr();
    }
    Ok((0..tuples)
        .map(|key| {
            let mut digits = Vec::with_capacity(slot_labels.len());
            let mut rest = key;
            for _ in 0..slot_labels.len() {
                digits.push(rest % 3);
                rest /= 3;
            }
            digits.reverse();
            (digits, weights[key])
        })
        .collect())
}

/// Enumerates the eigenstate tuples that drive a definite conformational
/// response for `n` identical bonds.
///
/// Every tuple is pushed through [`imprint_conformations`] and kept when the
/// record lands on a single branch other than the all-ground one. Exactly
/// 3^n - 1 tuples survive: the resting all-ground tuple leaves the receptor
/// unmoved and is excluded. Indices are 1-based.
pub fn enumerate_agonists(n: usize, basis: &EigenBasis) -> Result<Vec<Vec<usize>>> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidArgument(format!(
            "between 1 and 4 bonds are supported, got {n}"
        )));
    }
    let bases: Vec<EigenBasis> = (0..n).map(|_| basis.clone()).collect();
    let slots = ConformationRegister::slots(n);
    let slot_labels: Vec<String> = if n == 1 {
        vec!["conf".into()]
    } else {
        (1..=n).map(|k| format!("conf_{k}")).collect()
    };
    let refs: Vec<&str> = slot_labels.iter().map(|s| s.as_str()).collect();

    let mut agonists = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let mut tuple = Vec::with_capacity(n);
        let mut rest = code;
        for _ in 0..n {
            tuple.push(rest % 3 + 1);
            rest /= 3;
        }
        tuple.reverse();

        let bond_states: Vec<StateVector> = tuple
            .iter()
            .map(|&j| basis.eps(j).clone())
            .collect();
        let joint = imprint_conformations(&bond_states, &bases, &slots)?;
        let weights = conformation_branch_weights(&joint, &refs)?;
        let expected: Vec<usize> = tuple.iter().map(|&j| j - 1).collect();
        for (digits, w) in &weights {
            let want = if *digits == expected { 1.0 } else { 0.0 };
            if (w - want).abs() > tol::STRUCTURAL {
                return Err(Error::InvalidArgument(format!(
                    "eigenstate tuple {tuple:?} produced a spread record"
                )));
            }
        }
        if tuple.iter().any(|&j| j != 1) {
            agonists.push(tuple);
        }
    }
    Ok(agonists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bonds::{unified_state, HBondAmplitudes};
    use crate::entanglement::entropy_of_entanglement;
    use crate::recognition::{LigandProfile, INTRA_LABELS};
    use approx::assert_relative_eq;

    fn intra(c1: f64, c2: f64, c3: f64) -> StateVector {
        unified_state(&HBondAmplitudes::proton_real(c1, c2, c3).unwrap())
            .unwrap()
            .relabeled(&INTRA_LABELS)
            .unwrap()
    }

    #[test]
    fn eigenstate_input_yields_product_record() {
        let basis = EigenBasis::standard();
        for j in 1..=3 {
            let joint = imprint_conformation(
                basis.eps(j),
                &basis,
                &ConformationRegister::default_triplet(),
            )
            .unwrap();
            let expected = basis
                .eps(j)
                .tensor(
                    &StateVector::basis_state(
                        RegisterLayout::qutrits(&["conf"]).unwrap(),
                        &[j - 1],
                    )
                    .unwrap(),
                )
                .unwrap();
            assert!(joint.equals_up_to_phase(&expected, 1e-12));
        }
    }

    #[test]
    fn superposition_input_spreads_the_record() {
        let basis = EigenBasis::standard();
        let bond = LigandProfile::ligand_d().bond_state(&["x2", "x1"]).unwrap();
        let joint =
            imprint_conformation(&bond, &basis, &ConformationRegister::default_triplet())
                .unwrap();
        assert_relative_eq!(joint.amplitudes().norm(), 1.0, epsilon = 1e-12);
        let weights = conformation_branch_weights(&joint, &["conf"]).unwrap();
        assert_relative_eq!(weights[0].1, 0.0, epsilon = 1e-12);
        assert_relative_eq!(weights[1].1, 8.0 / 9.0, epsilon = 1e-12);
        assert_relative_eq!(weights[2].1, 1.0 / 9.0, epsilon = 1e-12);
        // The record is genuinely entangled with the bond.
        let e = entropy_of_entanglement(&joint, &["conf"]).unwrap();
        assert!(e > 0.4);
    }

    #[test]
    fn doubly_bonded_component_is_rejected() {
        let basis = EigenBasis::standard();
        let layout = RegisterLayout::qubits(&["x2", "x1"]).unwrap();
        let bad = StateVector::basis_state(layout, &[1, 1]).unwrap();
        let err = imprint_conformation(
            &bad,
            &basis,
            &ConformationRegister::default_triplet(),
        );
        assert!(matches!(err, Err(Error::SpanViolation { .. })));
    }

    #[test]
    fn moved_register_is_rejected() {
        let basis = EigenBasis::standard();
        let moved = ConformationRegister::new(
            vec!["chi1".into(), "chi2".into(), "chi3".into()],
            vec![Complex64::ZERO, Complex64::ONE, Complex64::ZERO],
        )
        .unwrap();
        assert!(imprint_conformation(basis.eps(2), &basis, &moved).is_err());
    }

    #[test]
    fn two_bond_record_factorizes() {
        let basis = EigenBasis::standard();
        let bonds = vec![
            basis.eps(2).clone(),
            LigandProfile::ligand_d().bond_state(&["x2", "x1"]).unwrap(),
        ];
        let bases = vec![basis.clone(), basis.clone()];
        let joint =
            imprint_conformations(&bonds, &bases, &ConformationRegister::slots(2)).unwrap();
        assert_eq!(joint.dim(), 144);
        let weights = conformation_branch_weights(&joint, &["conf_1", "conf_2"]).unwrap();
        let nonzero: Vec<_> = weights.iter().filter(|(_, w)| *w > 1e-12).collect();
        assert_eq!(nonzero.len(), 2);
        assert_eq!(nonzero[0].0, vec![1, 1]);
        assert_relative_eq!(nonzero[0].1, 8.0 / 9.0, epsilon = 1e-12);
        assert_eq!(nonzero[1].0, vec![1, 2]);
        assert_relative_eq!(nonzero[1].1, 1.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn norm_is_preserved_on_generic_input() {
        let basis = EigenBasis::standard();
        let bond = intra(0.6, -0.48, 0.64);
        let joint =
            imprint_conformation(&bond, &basis, &ConformationRegister::default_triplet())
                .unwrap();
        assert_relative_eq!(joint.amplitudes().norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn agonist_enumeration_matches_capacity() {
        let basis = EigenBasis::standard();
        let agonists = enumerate_agonists(2, &basis).unwrap();
        assert_eq!(agonists.len(), 8);
        assert!(!agonists.contains(&vec![1, 1]));
        assert!(agonists.contains(&vec![3, 3]));
        let single = enumerate_agonists(1, &basis).unwrap();
        assert_eq!(single, vec![vec![2], vec![3]]);
    }
}
