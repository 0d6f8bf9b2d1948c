use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

use super::layout::RegisterLayout;
use super::spectral;
use super::state::StateVector;

/// Mixed state over a labeled register.
///
/// Valid instances are Hermitian, unit trace and positive semidefinite up
/// to the structural tolerance. Eigenvalues inside [-1e-9, 0) are treated
/// as round-off zeros; anything lower fails validation.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    layout: RegisterLayout,
    matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(layout: RegisterLayout, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = layout.total_dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: matrix.nrows(),
            });
        }
        let herm_dev = hermiticity_deviation(&matrix);
        if herm_dev > tol::STRUCTURAL {
            return Err(Error::NotHermitian { deviation: herm_dev });
        }
        let trace_dev = (matrix.trace().re - 1.0).abs() + matrix.trace().im.abs();
        if trace_dev > tol::STRUCTURAL {
            return Err(Error::TraceNotUnit { deviation: trace_dev });
        }
        let rho = Self { layout, matrix };
        let min = rho.eigenvalues()?.into_iter().fold(f64::INFINITY, f64::min);
        if min < -tol::NEGATIVITY_CLAMP {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(rho)
    }

    /// Projector onto a pure state.
    pub fn from_pure(state: &StateVector) -> Self {
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut matrix = DMatrix::from_element(dim, dim, Complex64::ZERO);
        for i in 0..dim {
            for j in 0..dim {
                matrix[(i, j)] = amps[i] * amps[j].conj();
            }
        }
        Self {
            layout: state.layout().clone(),
            matrix,
        }
    }

    /// Convex mixture of states on a shared register.
    pub fn mixture(terms: &[(f64, DensityMatrix)]) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let layout = first.1.layout.clone();
        let dim = layout.total_dim();
        let mut matrix = DMatrix::from_element(dim, dim, Complex64::ZERO);
        let mut total = 0.0;
        for (weight, rho) in terms {
            if *weight < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "negative mixture weight {weight}"
                )));
            }
            if rho.layout != layout {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: rho.dim(),
                });
            }
            matrix += rho.matrix.scale(*weight);
            total += weight;
        }
        if (total - 1.0).abs() > tol::STRUCTURAL {
            return Err(Error::TraceNotUnit {
                deviation: (total - 1.0).abs(),
            });
        }
        Ok(Self { layout, matrix })
    }

    pub(crate) fn from_parts_unchecked(layout: RegisterLayout, matrix: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(layout.total_dim(), matrix.nrows());
        Self { layout, matrix }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Tr(rho^2); equals one exactly for pure states.
    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += (self.matrix[(i, j)] * self.matrix[(j, i)]).re;
            }
        }
        acc
    }

    /// Descending eigenvalues, round-off negatives clamped to zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (mut values, _) = spectral::eig_hermitian(&self.matrix)?;
        for v in values.iter_mut() {
            if *v < 0.0 && *v >= -tol::NEGATIVITY_CLAMP {
                *v = 0.0;
            }
        }
        Ok(values)
    }

    /// Number of eigenvalues above the support cutoff.
    pub fn rank(&self) -> Result<usize> {
        Ok(self
            .eigenvalues()?
            .into_iter()
            .filter(|v| *v > tol::RANK_CUTOFF)
            .count())
    }

    /// Traces out every subsystem not listed in `keep`.
    ///
    /// Kept subsystems stay in register order regardless of the order they
    /// are named in.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::TrivialCut);
        }
        let kept_layout = self.layout.restricted(keep)?;
        if kept_layout.len() == self.layout.len() {
            return Err(Error::TrivialCut);
        }
        let dims = self.layout.dims();
        let strides = self.layout.strides();
        let kept_pos: Vec<usize> = self
            .layout
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| keep.iter().any(|k| k == l))
            .map(|(i, _)| i)
            .collect();
        let traced_pos: Vec<usize> = (0..self.layout.len())
            .filter(|i| !kept_pos.contains(i))
            .collect();

        let kept_dim = kept_layout.total_dim();
        let traced_dim: usize = traced_pos.iter().map(|&p| dims[p]).product();

        // Flat offsets contributed by each reduced index and each traced index.
        let offsets = |positions: &[usize]| -> Vec<usize> {
            let count: usize = positions.iter().map(|&p| dims[p]).product();
            let mut table = vec![0usize; count];
            for (flat, entry) in table.iter_mut().enumerate() {
                let mut rem = flat;
                let mut offset = 0;
                for &p in positions.iter().rev() {
                    offset += (rem % dims[p]) * strides[p];
                    rem /= dims[p];
                }
                *entry = offset;
            }
            table
        };
        let kept_offsets = offsets(&kept_pos);
        let traced_offsets = offsets(&traced_pos);

        let mut reduced = DMatrix::from_element(kept_dim, kept_dim, Complex64::ZERO);
        for r in 0..kept_dim {
            for c in 0..kept_dim {
                let mut acc = Complex64::ZERO;
                for t in 0..traced_dim {
                    acc += self.matrix[(kept_offsets[r] + traced_offsets[t],
                                        kept_offsets[c] + traced_offsets[t])];
                }
                reduced[(r, c)] = acc;
            }
        }
        Ok(DensityMatrix {
            layout: kept_layout,
            matrix: reduced,
        })
    }

    /// Reorders subsystems to the given label order.
    pub fn permuted(&self, order: &[&str]) -> Result<DensityMatrix> {
        if order.len() != self.layout.len() {
            return Err(Error::DimensionMismatch {
                expected: self.layout.len(),
                actual: order.len(),
            });
        }
        let positions: Vec<usize> = order
            .iter()
            .map(|l| self.layout.position(l))
            .collect::<Result<_>>()?;
        let mut seen = vec![false; positions.len()];
        for &p in &positions {
            if seen[p] {
                return Err(Error::DuplicateLabel(order[p].to_string()));
            }
            seen[p] = true;
        }
        let new_layout = RegisterLayout::new(
            positions
                .iter()
                .map(|&p| (self.layout.labels()[p].clone(), self.layout.dims()[p]))
                .collect(),
        )?;
        let dim = self.dim();
        let mut map = vec![0usize; dim];
        for (new_idx, slot) in map.iter_mut().enumerate() {
            let new_digits = new_layout.digits_of(new_idx);
            let mut old_digits = vec![0usize; positions.len()];
            for (k, &p) in positions.iter().enumerate() {
                old_digits[p] = new_digits[k];
            }
            *slot = self.layout.index_of(&old_digits);
        }
        let mut matrix = DMatrix::from_element(dim, dim, Complex64::ZERO);
        for r in 0..dim {
            for c in 0..dim {
                matrix[(r, c)] = self.matrix[(map[r], map[c])];
            }
        }
        Ok(DensityMatrix {
            layout: new_layout,
            matrix,
        })
    }

    /// Conjugates by a local operator: (I .. U .. I) rho (I .. U .. I)^dag.
    pub fn conjugate_by_local(&self, label: &str, u: &DMatrix<Complex64>) -> Result<DensityMatrix> {
        let full = embed_local(&self.layout, label, u)?;
        let matrix = &full * &self.matrix * full.adjoint();
        Ok(DensityMatrix {
            layout: self.layout.clone(),
            matrix,
        })
    }
}

/// Largest absolute entry of m - m^dagger.
pub fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Expands a local operator to the full register by Kronecker products.
pub fn embed_local(
    layout: &RegisterLayout,
    label: &str,
    u: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    let pos = layout.position(label)?;
    let local_dim = layout.dims()[pos];
    if u.nrows() != local_dim || u.ncols() != local_dim {
        return Err(Error::DimensionMismatch {
            expected: local_dim,
            actual: u.nrows(),
        });
    }
    let mut full = DMatrix::from_element(1, 1, Complex64::ONE);
    for (k, &dim) in layout.dims().iter().enumerate() {
        let factor = if k == pos {
            u.clone()
        } else {
            DMatrix::identity(dim, dim)
        };
        full = full.kronecker(&factor);
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn three_term_state() -> StateVector {
        // (|10> + |01> + |00>)/sqrt(3) over donor and acceptor qubits
        let layout = RegisterLayout::qubits(&["d", "a"]).unwrap();
        StateVector::normalized(
            layout,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn keeping_the_second_qubit_matches_hand_reduction() {
        let rho = DensityMatrix::from_pure(&three_term_state());
        let reduced = rho.partial_trace(&["a"]).unwrap();
        let m = reduced.matrix();
        assert_relative_eq!(m[(0, 0)].re, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(m[(0, 1)].re, 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(m[(1, 0)].re, 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(m[(1, 1)].re, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn partial_trace_preserves_trace_and_hermiticity() {
        let rho = DensityMatrix::from_pure(&three_term_state());
        let reduced = rho.partial_trace(&["d"]).unwrap();
        assert_relative_eq!(reduced.trace().re, 1.0, epsilon = 1e-12);
        assert!(hermiticity_deviation(reduced.matrix()) < 1e-12);
    }

    #[test]
    fn tracing_everything_or_nothing_is_rejected() {
        let rho = DensityMatrix::from_pure(&three_term_state());
        assert!(matches!(rho.partial_trace(&[]), Err(Error::TrivialCut)));
        assert!(matches!(
            rho.partial_trace(&["d", "a"]),
            Err(Error::TrivialCut)
        ));
    }

    #[test]
    fn permutation_swaps_marginals() {
        let rho = DensityMatrix::from_pure(&three_term_state());
        let swapped = rho.permuted(&["a", "d"]).unwrap();
        let keep_a = rho.partial_trace(&["a"]).unwrap();
        let keep_a_after = swapped.partial_trace(&["a"]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_relative_eq!(
                    keep_a.matrix()[(i, j)].re,
                    keep_a_after.matrix()[(i, j)].re,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn validation_rejects_bad_trace() {
        let layout = RegisterLayout::qubits(&["q"]).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[c(0.9, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(layout, m),
            Err(Error::TraceNotUnit { .. })
        ));
    }

    #[test]
    fn validation_rejects_negative_eigenvalues() {
        let layout = RegisterLayout::qubits(&["q"]).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.2, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(layout, m),
            Err(Error::NotPositive { .. })
        ));
    }
}
