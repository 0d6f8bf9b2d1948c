use crate::error::{Error, Result};
use crate::qmath::{von_neumann_entropy, DensityMatrix, StateVector};

/// Entropy of entanglement of a pure state across a labeled cut, in bits.
///
/// `cut` names the subsystems on one side of the bipartition; the rest of
/// the register forms the other side. Both reduced states carry the same
/// spectrum, so their entropies agree up to round-off; the value is clamped
/// to [0, log2 of the smaller side].
pub fn entropy_of_entanglement(psi: &StateVector, cut: &[&str]) -> Result<f64> {
    let layout = psi.layout();
    if cut.is_empty() {
        return Err(Error::TrivialCut);
    }
    for label in cut {
        layout.position(label)?;
    }
    let other: Vec<&str> = layout
        .labels()
        .iter()
        .filter(|l| !cut.iter().any(|c| c == &l.as_str()))
        .map(|l| l.as_str())
        .collect();
    if other.is_empty() {
        return Err(Error::TrivialCut);
    }

    let rho = DensityMatrix::from_pure(psi);
    let side_a = rho.partial_trace(cut)?;
    let side_b = rho.partial_trace(&other)?;
    let entropy_a = von_neumann_entropy(&side_a)?;
    let entropy_b = von_neumann_entropy(&side_b)?;
    debug_assert!(
        (entropy_a - entropy_b).abs() <= 1e-8,
        "reduced entropies disagree: {entropy_a} vs {entropy_b}"
    );

    let cap = (side_a.dim().min(side_b.dim()) as f64).log2();
    Ok(entropy_a.clamp(0.0, cap))
}
