use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

use super::layout::RegisterLayout;

/// Pure state over a labeled register, normalized to one.
#[derive(Debug, Clone)]
pub struct StateVector {
    layout: RegisterLayout,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    /// Builds a state and checks the norm against the layout dimension.
    pub fn new(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                actual: amplitudes.len(),
            });
        }
        let amplitudes = DVector::from_vec(amplitudes);
        let deviation = (amplitudes.norm() - 1.0).abs();
        if deviation > tol::STRUCTURAL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { layout, amplitudes })
    }

    /// Builds a state from unnormalized amplitudes by rescaling them.
    pub fn normalized(layout: RegisterLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.total_dim(),
                actual: amplitudes.len(),
            });
        }
        let mut amplitudes = DVector::from_vec(amplitudes);
        let norm = amplitudes.norm();
        if norm <= tol::STRUCTURAL {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        amplitudes /= Complex64::new(norm, 0.0);
        Ok(Self { layout, amplitudes })
    }

    /// Rescales the amplitudes back to unit norm.
    pub fn renormalized(&self) -> Result<Self> {
        let norm = self.amplitudes.norm();
        if norm <= tol::STRUCTURAL {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        Ok(Self {
            layout: self.layout.clone(),
            amplitudes: self.amplitudes.map(|a| a / norm),
        })
    }

    /// Basis state |digits> of the register.
    pub fn basis_state(layout: RegisterLayout, digits: &[usize]) -> Result<Self> {
        if digits.len() != layout.len() {
            return Err(Error::DimensionMismatch {
                expected: layout.len(),
                actual: digits.len(),
            });
        }
        for (digit, dim) in digits.iter().zip(layout.dims()) {
            if digit >= dim {
                return Err(Error::InvalidArgument(format!(
                    "basis digit {digit} out of range for dimension {dim}"
                )));
            }
        }
        let index = layout.index_of(digits);
        let mut amplitudes = vec![Complex64::ZERO; layout.total_dim()];
        amplitudes[index] = Complex64::ONE;
        Ok(Self {
            layout,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    pub(crate) fn from_parts_unchecked(
        layout: RegisterLayout,
        amplitudes: DVector<Complex64>,
    ) -> Self {
        debug_assert_eq!(layout.total_dim(), amplitudes.len());
        debug_assert!((amplitudes.norm() - 1.0).abs() <= 1e-7);
        Self { layout, amplitudes }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, digits: &[usize]) -> Complex64 {
        self.amplitudes[self.layout.index_of(digits)]
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// Same amplitudes over freshly labeled subsystems.
    pub fn relabeled(&self, labels: &[&str]) -> Result<Self> {
        Ok(Self {
            layout: self.layout.relabeled(labels)?,
            amplitudes: self.amplitudes.clone(),
        })
    }

    /// True when the states agree up to a global phase.
    pub fn equals_up_to_phase(&self, other: &Self, tolerance: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let overlap = self.amplitudes.dotc(&other.amplitudes);
        (overlap.norm() - 1.0).abs() <= tolerance
    }

    /// Kronecker product; the second register is appended to the first.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = self.layout.joined(&other.layout)?;
        Ok(Self {
            layout,
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        })
    }

    /// Contracts one subsystem against a fixed local vector.
    ///
    /// Returns the remaining register's unnormalized amplitudes together
    /// with their norm. The norm squared is the probability of finding the
    /// subsystem in the given local state.
    pub fn contract(&self, label: &str, local: &[Complex64]) -> Result<(Self, f64)> {
        let pos = self.layout.position(label)?;
        let dims = self.layout.dims();
        let local_dim = dims[pos];
        if local.len() != local_dim {
            return Err(Error::DimensionMismatch {
                expected: local_dim,
                actual: local.len(),
            });
        }
        let keep: Vec<&str> = self
            .layout
            .labels()
            .iter()
            .filter(|l| l.as_str() != label)
            .map(|l| l.as_str())
            .collect();
        if keep.is_empty() {
            return Err(Error::TrivialCut);
        }
        let rest_layout = self.layout.restricted(&keep)?;
        let stride: usize = dims[pos + 1..].iter().product();
        let block = stride * local_dim;
        let outer: usize = dims[..pos].iter().product();

        let mut rest = DVector::from_element(rest_layout.total_dim(), Complex64::ZERO);
        for hi in 0..outer {
            for x in 0..local_dim {
                let weight = local[x].conj();
                if weight == Complex64::ZERO {
                    continue;
                }
                for lo in 0..stride {
                    rest[hi * stride + lo] += weight * self.amplitudes[hi * block + x * stride + lo];
                }
            }
        }
        let norm = rest.norm();
        Ok((
            Self {
                layout: rest_layout,
                amplitudes: rest,
            },
            norm,
        ))
    }

    /// Applies a unitary acting on the full register.
    pub fn apply_matrix(&self, u: &nalgebra::DMatrix<Complex64>) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: u.nrows(),
            });
        }
        Ok(Self {
            layout: self.layout.clone(),
            amplitudes: u * &self.amplitudes,
        })
    }

    /// Applies a local operator on one labeled subsystem.
    pub fn apply_local(&self, label: &str, u: &nalgebra::DMatrix<Complex64>) -> Result<Self> {
        let pos = self.layout.position(label)?;
        let dims = self.layout.dims();
        let local_dim = dims[pos];
        if u.nrows() != local_dim || u.ncols() != local_dim {
            return Err(Error::DimensionMismatch {
                expected: local_dim,
                actual: u.nrows(),
            });
        }
        let stride: usize = dims[pos + 1..].iter().product();
        let block = stride * local_dim;
        let outer: usize = dims[..pos].iter().product();
        let mut out = DVector::from_element(self.dim(), Complex64::ZERO);
        for hi in 0..outer {
            for lo in 0..stride {
                for row in 0..local_dim {
                    let mut acc = Complex64::ZERO;
                    for col in 0..local_dim {
                        acc += u[(row, col)] * self.amplitudes[hi * block + col * stride + lo];
                    }
                    out[hi * block + row * stride + lo] = acc;
                }
            }
        }
        Ok(Self {
            layout: self.layout.clone(),
            amplitudes: out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_unnormalized_amplitudes() {
        let layout = RegisterLayout::qubits(&["a"]).unwrap();
        let err = StateVector::new(layout, vec![c(1.0, 0.0), c(0.5, 0.0)]);
        assert!(matches!(err, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn tensor_of_basis_states_is_a_basis_state() {
        let a = StateVector::basis_state(RegisterLayout::qutrits(&["x1", "h"]).unwrap(), &[1, 1])
            .unwrap();
        let b =
            StateVector::basis_state(RegisterLayout::qutrits(&["x2"]).unwrap(), &[2]).unwrap();
        let joint = a.tensor(&b).unwrap();
        assert_eq!(joint.dim(), 27);
        for idx in 0..27 {
            let expected = if idx == 14 { 1.0 } else { 0.0 };
            assert_relative_eq!(joint.amplitudes()[idx].re, expected, epsilon = 1e-12);
            assert_relative_eq!(joint.amplitudes()[idx].im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn tensor_rejects_label_collision() {
        let layout = RegisterLayout::qubits(&["a"]).unwrap();
        let s = StateVector::basis_state(layout, &[0]).unwrap();
        assert!(matches!(s.tensor(&s), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn contraction_recovers_product_factor() {
        let one_minus_zero = StateVector::normalized(
            RegisterLayout::qubits(&["m"]).unwrap(),
            vec![c(-1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        let rest = StateVector::normalized(
            RegisterLayout::qubits(&["r"]).unwrap(),
            vec![c(0.6, 0.0), c(0.8, 0.0)],
        )
        .unwrap();
        let joint = one_minus_zero.tensor(&rest).unwrap();
        let probe = [c(-1.0, 0.0) / 2f64.sqrt(), c(1.0, 0.0) / 2f64.sqrt()];
        let (contracted, norm) = joint.contract("m", &probe).unwrap();
        assert_relative_eq!(norm, 1.0, epsilon = 1e-12);
        assert_relative_eq!(contracted.amplitudes()[0].re, 0.6, epsilon = 1e-12);
        assert_relative_eq!(contracted.amplitudes()[1].re, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn local_operator_respects_strides() {
        let layout = RegisterLayout::qubits(&["a", "b"]).unwrap();
        let s = StateVector::basis_state(layout, &[0, 1]).unwrap();
        let flip = nalgebra::DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        );
        let flipped = s.apply_local("a", &flip).unwrap();
        assert_relative_eq!(flipped.amplitude(&[1, 1]).re, 1.0, epsilon = 1e-12);
        let flipped_b = s.apply_local("b", &flip).unwrap();
        assert_relative_eq!(flipped_b.amplitude(&[0, 0]).re, 1.0, epsilon = 1e-12);
    }
}
