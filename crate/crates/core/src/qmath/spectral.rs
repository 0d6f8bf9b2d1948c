use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

use super::density::{hermiticity_deviation, DensityMatrix};

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues sorted descending and the matching eigenvectors as
/// matrix columns. The input is symmetrized before factoring so round-off
/// asymmetry below the structural tolerance cannot leak into the result.
pub fn eig_hermitian(m: &DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            actual: m.ncols(),
        });
    }
    let dev = hermiticity_deviation(m);
    if dev > tol::STRUCTURAL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let symmetrized = (m + m.adjoint()).scale(0.5);
    let eig = symmetrized.symmetric_eigen();

    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());

    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = DMatrix::from_element(n, n, Complex64::ZERO);
    for (col, &k) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(k));
    }
    Ok((values, vectors))
}

/// Binary Shannon entropy in bits, clamped against round-off.
pub fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    let q = 1.0 - p;
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.log2();
    }
    if q > 0.0 {
        h -= q * q.log2();
    }
    h.max(0.0)
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy in bits.
///
/// Eigenvalues inside [-1e-9, 0) are clamped to zero; the result is clamped
/// to [0, log2(dim)].
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let values = rho.eigenvalues()?;
    let entropy = shannon_entropy(&values);
    Ok(entropy.min((rho.dim() as f64).log2()))
}

/// Hermitian square root of a positive semidefinite matrix.
fn psd_sqrt(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let (values, vectors) = eig_hermitian(m)?;
    let n = m.nrows();
    let mut scaled = vectors.clone();
    for (col, &v) in values.iter().enumerate() {
        let root = Complex64::new(v.max(0.0).sqrt(), 0.0);
        for row in 0..n {
            scaled[(row, col)] *= root;
        }
    }
    Ok(&scaled * vectors.adjoint())
}

/// Uhlmann fidelity F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
///
/// Equals one only for identical states and zero only when the supports are
/// orthogonal.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: sigma.dim(),
        });
    }
    let root = psd_sqrt(rho.matrix())?;
    let inner = &root * sigma.matrix() * &root;
    let (values, _) = eig_hermitian(&((&inner + inner.adjoint()).scale(0.5)))?;
    let trace: f64 = values.iter().map(|v| v.max(0.0).sqrt()).sum();
    Ok((trace * trace).clamp(0.0, 1.0))
}

/// Checks that a set of vectors is orthonormal within tolerance.
pub fn orthonormality_deviation(vectors: &[DVector<Complex64>]) -> f64 {
    let mut dev: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let overlap = a.dotc(b);
            let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
            dev = dev.max((overlap - target).norm());
        }
    }
    dev
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::layout::RegisterLayout;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_by_two_spectrum_matches_quadratic_formula() {
        // Closed-form roots of x^2 - tr x + det for [[2,1],[1,1]]/3.
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[c(2.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0)],
        );
        let (values, vectors) = eig_hermitian(&m).unwrap();
        let expected_hi = (3.0 + 5f64.sqrt()) / 6.0;
        let expected_lo = (3.0 - 5f64.sqrt()) / 6.0;
        assert_relative_eq!(values[0], expected_hi, epsilon = 1e-12);
        assert_relative_eq!(values[1], expected_lo, epsilon = 1e-12);

        let rebuilt = &vectors
            * DMatrix::from_diagonal(&DVector::from_vec(
                values.iter().map(|&v| c(v, 0.0)).collect(),
            ))
            * vectors.adjoint();
        for i in 0..2 {
            for j in 0..2 {
                assert!((rebuilt[(i, j)] - m[(i, j)]).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn complex_hermitian_input_is_handled() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)]);
        let (values, _) = eig_hermitian(&m).unwrap();
        assert_relative_eq!(values[0], 2.0, epsilon = 1e-10);
        assert_relative_eq!(values[1], 0.0, epsilon = 1e-10);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn pure_state_entropy_vanishes() {
        let layout = RegisterLayout::qubits(&["q"]).unwrap();
        let psi = crate::qmath::StateVector::basis_state(layout, &[0]).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        assert_relative_eq!(von_neumann_entropy(&rho).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn maximally_mixed_qubit_entropy_is_one_bit() {
        let layout = RegisterLayout::qubits(&["q"]).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        let rho = DensityMatrix::new(layout, m).unwrap();
        assert_relative_eq!(von_neumann_entropy(&rho).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_of_qubit_states_matches_closed_form() {
        // For 2x2 states F = tr(rho sigma) + 2 sqrt(det rho det sigma).
        let layout = RegisterLayout::qubits(&["q"]).unwrap();
        let a = DMatrix::from_row_slice(
            2,
            2,
            &[c(2.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0)],
        );
        let b = DMatrix::from_row_slice(
            2,
            2,
            &[c(5.0 / 6.0, 0.0), c(1.0 / 6.0, 0.0), c(1.0 / 6.0, 0.0), c(1.0 / 6.0, 0.0)],
        );
        let rho = DensityMatrix::new(layout.clone(), a.clone()).unwrap();
        let sigma = DensityMatrix::new(layout, b.clone()).unwrap();

        let tr_prod = (&a * &b).trace().re;
        let det = |m: &DMatrix<Complex64>| (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
        let closed = tr_prod + 2.0 * (det(&a) * det(&b)).max(0.0).sqrt();

        let f = fidelity(&rho, &sigma).unwrap();
        assert_relative_eq!(f, closed, epsilon = 1e-10);
        assert!(f > 0.0);
    }

    #[test]
    fn fidelity_extremes() {
        let layout = RegisterLayout::qubits(&["q"]).unwrap();
        let zero = crate::qmath::StateVector::basis_state(layout.clone(), &[0]).unwrap();
        let one = crate::qmath::StateVector::basis_state(layout, &[1]).unwrap();
        let rho = DensityMatrix::from_pure(&zero);
        let sigma = DensityMatrix::from_pure(&one);
        assert_relative_eq!(fidelity(&rho, &rho).unwrap(), 1.0, epsilon = 1e-10);
        assert_relative_eq!(fidelity(&rho, &sigma).unwrap(), 0.0, epsilon = 1e-10);
    }
}
