//! Thermal mixtures over an energy eigensystem and the long-time dephasing
//! map. Both are endpoint maps, not dynamics: thermalization produces the
//! Gibbs mixture of the supplied levels and dephasing erases off-diagonal
//! elements in a chosen basis.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmath::{orthonormality_deviation, DensityMatrix, RegisterLayout, StateVector};
use crate::tol;

/// Orthogonality tolerance for user-supplied level systems.
const LEVEL_ORTHO_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LevelScale {
    Energies,
    Weights,
}

/// A set of mutually orthogonal levels, scaled either by energies or by
/// ready-made Boltzmann weights.
///
/// Energies carry arbitrary units; only the product beta * energy ever
/// matters, so no Boltzmann constant appears anywhere.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    scales: Vec<f64>,
    states: Vec<StateVector>,
    kind: LevelScale,
}

impl EigenSystem {
    fn validate_states(states: &[StateVector]) -> Result<()> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidArgument("eigensystem needs at least one level".into()))?;
        for s in states {
            if s.layout() != first.layout() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    actual: s.dim(),
                });
            }
        }
        let vectors: Vec<_> = states.iter().map(|s| s.amplitudes().clone()).collect();
        let dev = orthonormality_deviation(&vectors);
        if dev > LEVEL_ORTHO_TOL {
            return Err(Error::NotOrthonormal { deviation: dev });
        }
        Ok(())
    }

    /// Levels given as (energy, eigenstate) pairs.
    pub fn from_energies(levels: Vec<(f64, StateVector)>) -> Result<Self> {
        let (scales, states): (Vec<f64>, Vec<StateVector>) = levels.into_iter().unzip();
        if scales.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidArgument("non-finite level energy".into()));
        }
        Self::validate_states(&states)?;
        Ok(Self {
            scales,
            states,
            kind: LevelScale::Energies,
        })
    }

    /// Levels given as (Boltzmann weight, eigenstate) pairs.
    pub fn from_weights(levels: Vec<(f64, StateVector)>) -> Result<Self> {
        let (scales, states): (Vec<f64>, Vec<StateVector>) = levels.into_iter().unzip();
        if scales.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument("weights must be finite and nonnegative".into()));
        }
        let sum: f64 = scales.iter().sum();
        if (sum - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::NotNormalized {
                deviation: (sum - 1.0).abs(),
            });
        }
        Self::validate_states(&states)?;
        Ok(Self {
            scales,
            states,
            kind: LevelScale::Weights,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn layout(&self) -> &RegisterLayout {
        self.states[0].layout()
    }

    fn has_weights(&self) -> bool {
        self.kind == LevelScale::Weights
    }
}

fn mixture_over_levels(sys: &EigenSystem, weights: &[f64]) -> DensityMatrix {
    let dim = sys.layout().total_dim();
    let mut matrix = DMatrix::from_element(dim, dim, Complex64::ZERO);
    for (w, state) in weights.iter().zip(sys.states()) {
        if *w == 0.0 {
            continue;
        }
        let amps = state.amplitudes();
        for i in 0..dim {
            for j in 0..dim {
                matrix[(i, j)] += amps[i] * amps[j].conj() * *w;
            }
        }
    }
    DensityMatrix::from_parts_unchecked(sys.layout().clone(), matrix)
}

/// Gibbs state sum_m e^{-beta e_m}/Z |e_m><e_m| over the supplied levels.
///
/// Energies are shifted by their minimum before exponentiating so large
/// beta cannot overflow; the weights are unaffected.
pub fn thermal_state(sys: &EigenSystem, inverse_temperature: f64) -> Result<DensityMatrix> {
    if sys.has_weights() {
        return Err(Error::InvalidArgument(
            "system carries weights, use thermal_state_from_weights".into(),
        ));
    }
    if !(inverse_temperature >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "inverse temperature must be nonnegative, got {inverse_temperature}"
        )));
    }
    let ground = sys.scales().iter().cloned().fold(f64::INFINITY, f64::min);
    let factors: Vec<f64> = sys
        .scales()
        .iter()
        .map(|e| (-inverse_temperature * (e - ground)).exp())
        .collect();
    let z: f64 = factors.iter().sum();
    let weights: Vec<f64> = factors.iter().map(|f| f / z).collect();
    Ok(mixture_over_levels(sys, &weights))
}

/// Mixture sum_i w_i |e_i><e_i| from directly supplied Boltzmann weights.
pub fn thermal_state_from_weights(sys: &EigenSystem) -> Result<DensityMatrix> {
    if !sys.has_weights() {
        return Err(Error::InvalidArgument(
            "system carries energies, use thermal_state".into(),
        ));
    }
    Ok(mixture_over_levels(sys, sys.scales()))
}

/// Erases coherences: sum_k <k|rho|k> |k><k| over an orthonormal basis of
/// the full register.
///
/// Idempotent by construction. In the computational basis this is exactly
/// the diagonal of rho, reproduced bit for bit on a second application; for
/// rotated bases a second pass agrees to round-off.
pub fn dephase(rho: &DensityMatrix, basis: &[StateVector]) -> Result<DensityMatrix> {
    let dim = rho.dim();
    if basis.len() != dim {
        return Err(Error::IncompleteBasis {
            got: basis.len(),
            need: dim,
        });
    }
    for b in basis {
        if b.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: b.dim(),
            });
        }
    }
    let vectors: Vec<_> = basis.iter().map(|b| b.amplitudes().clone()).collect();
    let dev = orthonormality_deviation(&vectors);
    if dev > tol::STRUCTURAL {
        return Err(Error::NotOrthonormal { deviation: dev });
    }

    let mut matrix = DMatrix::from_element(dim, dim, Complex64::ZERO);
    for b in &vectors {
        let population = (b.adjoint() * rho.matrix() * b)[(0, 0)].re;
        for i in 0..dim {
            for j in 0..dim {
                matrix[(i, j)] += b[i] * b[j].conj() * population;
            }
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(
        rho.layout().clone(),
        matrix,
    ))
}

/// Computational basis of a register, ready for `dephase`.
pub fn computational_basis(layout: &RegisterLayout) -> Vec<StateVector> {
    (0..layout.total_dim())
        .map(|idx| StateVector::basis_state(layout.clone(), &layout.digits_of(idx)).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bonds::{unified_state, HBondAmplitudes};
    use crate::entanglement::eof_2q;
    use approx::assert_relative_eq;

    fn tunneling_triplet() -> [StateVector; 3] {
        let r3 = 3f64.sqrt().recip();
        let r6 = 6f64.sqrt().recip();
        let r2 = 2f64.sqrt().recip();
        [
            unified_state(&HBondAmplitudes::proton_real(r3, r3, r3).unwrap()).unwrap(),
            unified_state(&HBondAmplitudes::proton_real(r6, r6, -2.0 * r6).unwrap()).unwrap(),
            unified_state(&HBondAmplitudes::proton_real(r2, -r2, 0.0).unwrap()).unwrap(),
        ]
    }

    #[test]
    fn infinite_temperature_is_uniform() {
        let [e1, e2, e3] = tunneling_triplet();
        let sys = EigenSystem::from_energies(vec![(0.0, e1), (1.0, e2), (2.5, e3)]).unwrap();
        let rho = thermal_state(&sys, 0.0).unwrap();
        let evs = rho.eigenvalues().unwrap();
        assert_relative_eq!(evs[0], 1.0 / 3.0, epsilon = 1e-10);
        assert_relative_eq!(evs[1], 1.0 / 3.0, epsilon = 1e-10);
        assert_relative_eq!(evs[2], 1.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn zero_temperature_limit_projects_on_the_ground_level() {
        let [e1, e2, e3] = tunneling_triplet();
        let ground = e1.clone();
        let sys = EigenSystem::from_energies(vec![(0.0, e1), (1.0, e2), (2.5, e3)]).unwrap();
        let rho = thermal_state(&sys, 1e4).unwrap();
        let projector = DensityMatrix::from_pure(&ground);
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                dev = dev.max((rho.matrix()[(i, j)] - projector.matrix()[(i, j)]).norm());
            }
        }
        assert!(dev < 1e-9);
    }

    #[test]
    fn thermal_weights_decrease_with_energy() {
        let [e1, e2, e3] = tunneling_triplet();
        let sys =
            EigenSystem::from_energies(vec![(0.1, e1), (0.9, e2), (2.0, e3)]).unwrap();
        let rho = thermal_state(&sys, 1.3).unwrap();
        let evs = rho.eigenvalues().unwrap();
        assert!(evs[0] > evs[1] && evs[1] > evs[2]);
    }

    #[test]
    fn weight_mixture_reproduces_populations() {
        let [e1, e2, e3] = tunneling_triplet();
        let sys = EigenSystem::from_weights(vec![(0.7, e1), (0.2, e2), (0.1, e3)]).unwrap();
        let rho = thermal_state_from_weights(&sys).unwrap();
        let evs = rho.eigenvalues().unwrap();
        assert_relative_eq!(evs[0], 0.7, epsilon = 1e-10);
        assert_relative_eq!(evs[1], 0.2, epsilon = 1e-10);
        assert_relative_eq!(evs[2], 0.1, epsilon = 1e-10);
    }

    #[test]
    fn weights_must_sum_to_one() {
        let [e1, e2, _] = tunneling_triplet();
        assert!(EigenSystem::from_weights(vec![(0.7, e1), (0.2, e2)]).is_err());
    }

    #[test]
    fn dephased_thermal_state_matches_hand_diagonal() {
        let [e1, e2, e3] = tunneling_triplet();
        let sys = EigenSystem::from_weights(vec![(0.7, e1), (0.2, e2), (0.1, e3)]).unwrap();
        let rho = thermal_state_from_weights(&sys).unwrap();
        let dephased = dephase(&rho, &computational_basis(rho.layout())).unwrap();
        // populations 22/60, 19/60, 19/60 on |00>, |01>, |10>
        assert_relative_eq!(dephased.matrix()[(0, 0)].re, 22.0 / 60.0, epsilon = 1e-12);
        assert_relative_eq!(dephased.matrix()[(1, 1)].re, 19.0 / 60.0, epsilon = 1e-12);
        assert_relative_eq!(dephased.matrix()[(2, 2)].re, 19.0 / 60.0, epsilon = 1e-12);
        assert_relative_eq!(dephased.matrix()[(3, 3)].re, 0.0, epsilon = 1e-12);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(dephased.matrix()[(i, j)].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn dephasing_twice_changes_nothing() {
        let [e1, e2, e3] = tunneling_triplet();
        let sys = EigenSystem::from_weights(vec![(0.7, e1), (0.2, e2), (0.1, e3)]).unwrap();
        let rho = thermal_state_from_weights(&sys).unwrap();
        let basis = computational_basis(rho.layout());
        let once = dephase(&rho, &basis).unwrap();
        let twice = dephase(&once, &basis).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(once.matrix()[(i, j)], twice.matrix()[(i, j)]);
            }
        }
    }

    #[test]
    fn dephased_bell_state_is_separable() {
        let layout = RegisterLayout::qubits(&["a", "b"]).unwrap();
        let bell = StateVector::normalized(
            layout.clone(),
            vec![
                Complex64::ZERO,
                Complex64::ONE,
                Complex64::ONE,
                Complex64::ZERO,
            ],
        )
        .unwrap();
        let rho = DensityMatrix::from_pure(&bell);
        let dephased = dephase(&rho, &computational_basis(&layout)).unwrap();
        assert_relative_eq!(dephased.matrix()[(1, 1)].re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(dephased.matrix()[(2, 2)].re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(eof_2q(&dephased).unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn incomplete_basis_is_rejected() {
        let layout = RegisterLayout::qubits(&["a", "b"]).unwrap();
        let rho = DensityMatrix::from_pure(
            &StateVector::basis_state(layout.clone(), &[0, 0]).unwrap(),
        );
        let mut basis = computational_basis(&layout);
        basis.pop();
        assert!(matches!(
            dephase(&rho, &basis),
            Err(Error::IncompleteBasis { got: 3, need: 4 })
        ));
    }
}
