use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmath::{binary_entropy, eig_hermitian, DensityMatrix};

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.layout().dims() != [2, 2] {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: rho.dim(),
        });
    }
    Ok(())
}

/// Spin-flipped partner rho_tilde = (sy (x) sy) conj(rho) (sy (x) sy).
fn spin_flip(rho: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    // (sy (x) sy) maps |00> -> -|11>, |01> -> |10>, |10> -> |01>, |11> -> -|00>.
    let mut y2 = DMatrix::from_element(4, 4, Complex64::ZERO);
    y2[(0, 3)] = Complex64::new(-1.0, 0.0);
    y2[(1, 2)] = Complex64::ONE;
    y2[(2, 1)] = Complex64::ONE;
    y2[(3, 0)] = Complex64::new(-1.0, 0.0);
    let conj = rho.map(|z| z.conj());
    &y2 * conj * &y2
}

/// Two-qubit concurrence, the closed form for mixed states.
///
/// Computed from the Hermitian product sqrt(rho) rho_tilde sqrt(rho), whose
/// spectrum matches rho rho_tilde while staying inside Hermitian
/// eigensolves. Returns max(0, l1 - l2 - l3 - l4) in [0, 1].
pub fn concurrence_2q(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let (values, vectors) = eig_hermitian(rho.matrix())?;
    let mut root = vectors.clone();
    for (col, &v) in values.iter().enumerate() {
        let s = Complex64::new(v.max(0.0).sqrt(), 0.0);
        for row in 0..4 {
            root[(row, col)] *= s;
        }
    }
    let sqrt_rho = &root * vectors.adjoint();

    let product = &sqrt_rho * spin_flip(rho.matrix()) * &sqrt_rho;
    let symmetrized = (&product + product.adjoint()).scale(0.5);
    let (mut spectrum, _) = eig_hermitian(&symmetrized)?;
    for v in spectrum.iter_mut() {
        *v = v.max(0.0).sqrt();
    }
    spectrum.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let c = spectrum[0] - spectrum[1] - spectrum[2] - spectrum[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Entanglement of formation of a two-qubit state, in bits.
///
/// h((1 + sqrt(1 - C^2))/2) with C the concurrence; exact for all two-qubit
/// mixed states and equal to the entropy of entanglement on pure ones.
pub fn eof_2q(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence_2q(rho)?;
    let p = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    Ok(binary_entropy(p).clamp(0.0, 1.0))
}
