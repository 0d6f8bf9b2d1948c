use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::tol;

use super::spectral::orthonormality_deviation;
use super::state::StateVector;

/// Orthonormal, complete measurement basis for a single subsystem.
#[derive(Debug, Clone)]
pub struct LocalBasis {
    vectors: Vec<Vec<Complex64>>,
}

impl LocalBasis {
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = vectors
            .first()
            .ok_or(Error::IncompleteBasis { got: 0, need: 1 })?
            .len();
        if vectors.len() != dim {
            return Err(Error::IncompleteBasis {
                got: vectors.len(),
                need: dim,
            });
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: v.len(),
                });
            }
        }
        let as_dvecs: Vec<DVector<Complex64>> = vectors
            .iter()
            .map(|v| DVector::from_vec(v.clone()))
            .collect();
        let dev = orthonormality_deviation(&as_dvecs);
        if dev > tol::STRUCTURAL {
            return Err(Error::NotOrthonormal { deviation: dev });
        }
        Ok(Self { vectors })
    }

    /// Computational basis |0>, |1>, ... of the given dimension.
    pub fn computational(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|k| {
                (0..dim)
                    .map(|i| if i == k { Complex64::ONE } else { Complex64::ZERO })
                    .collect()
            })
            .collect();
        Self { vectors }
    }

    /// Qubit basis {|+>, |->} with |+-> = (|1> +- |0>)/sqrt(2).
    ///
    /// Outcome 0 is the plus state, outcome 1 the minus state. Amplitude
    /// order inside each vector is (|0>, |1>).
    pub fn plus_minus() -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            vectors: vec![vec![s, s], vec![-s, s]],
        }
    }

    /// General tunneling pair {l1|1> + l2|0>, l2*|1> - l1*|0>}.
    pub fn weighted_pair(l1: Complex64, l2: Complex64) -> Result<Self> {
        Self::new(vec![vec![l2, l1], vec![-l1.conj(), l2.conj()]])
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, k: usize) -> &[Complex64] {
        &self.vectors[k]
    }
}

/// Probability of each basis outcome on one subsystem.
pub fn branch_probabilities(
    state: &StateVector,
    label: &str,
    basis: &LocalBasis,
) -> Result<Vec<f64>> {
    if basis.dim() != state.layout().dim_of(label)? {
        return Err(Error::DimensionMismatch {
            expected: state.layout().dim_of(label)?,
            actual: basis.dim(),
        });
    }
    let mut probs = Vec::with_capacity(basis.dim());
    for k in 0..basis.dim() {
        let (_, norm) = state.contract(label, basis.vector(k))?;
        probs.push(norm * norm);
    }
    Ok(probs)
}

/// Projects one subsystem onto a chosen basis outcome.
///
/// Returns the normalized post-measurement state on the full register and
/// the outcome probability. Fails when the branch has zero probability.
pub fn project_onto(
    state: &StateVector,
    label: &str,
    basis: &LocalBasis,
    outcome: usize,
) -> Result<(StateVector, f64)> {
    if outcome >= basis.dim() {
        return Err(Error::InvalidArgument(format!(
            "outcome {outcome} out of range for basis of dimension {}",
            basis.dim()
        )));
    }
    let (rest, norm) = state.contract(label, basis.vector(outcome))?;
    let probability = norm * norm;
    if probability <= tol::STRUCTURAL * tol::STRUCTURAL {
        return Err(Error::InvalidArgument(format!(
            "projection onto outcome {outcome} has zero probability"
        )));
    }

    // Re-embed the collapsed subsystem so the register keeps its layout.
    let pos = state.layout().position(label)?;
    let dims = state.layout().dims();
    let local_dim = dims[pos];
    let stride: usize = dims[pos + 1..].iter().product();
    let block = stride * local_dim;
    let outer: usize = dims[..pos].iter().product();
    let scale = Complex64::new(1.0 / norm, 0.0);

    let mut full = DVector::from_element(state.dim(), Complex64::ZERO);
    for hi in 0..outer {
        for x in 0..local_dim {
            let weight = basis.vector(outcome)[x] * scale;
            if weight == Complex64::ZERO {
                continue;
            }
            for lo in 0..stride {
                full[hi * block + x * stride + lo] =
                    weight * rest.amplitudes()[hi * stride + lo];
            }
        }
    }
    Ok((
        StateVector::from_parts_unchecked(state.layout().clone(), full),
        probability,
    ))
}

/// Result of a sampled projective measurement.
#[derive(Debug, Clone)]
pub struct MeasurementRecord {
    pub outcome: usize,
    pub probability: f64,
    pub post_state: StateVector,
}

/// Samples a projective measurement of one subsystem.
///
/// The outcome is drawn with a counter-based generator seeded from `seed`,
/// so identical inputs always reproduce the same record. Zero-probability
/// branches are never selected.
pub fn measure_projective(
    state: &StateVector,
    label: &str,
    basis: &LocalBasis,
    seed: u64,
) -> Result<MeasurementRecord> {
    let probs = branch_probabilities(state, label, basis)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let draw: f64 = rng.gen();
    let mut acc = 0.0;
    let mut outcome = None;
    for (k, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        if draw < acc {
            outcome = Some(k);
            break;
        }
    }
    // Round-off can leave acc marginally below one; fall back to the last
    // branch with weight.
    let outcome = outcome
        .or_else(|| (0..probs.len()).rev().find(|&k| probs[k] > 0.0))
        .ok_or_else(|| Error::InvalidArgument("all branch probabilities vanish".into()))?;
    let (post_state, probability) = project_onto(state, label, basis, outcome)?;
    Ok(MeasurementRecord {
        outcome,
        probability,
        post_state,
    })
}
