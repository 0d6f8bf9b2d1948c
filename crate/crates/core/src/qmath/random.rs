//! Seeded random objects for tests and stochastic searches.
//!
//! Everything here takes an explicit generator; no ambient entropy is ever
//! consulted. Unitaries are Haar distributed via QR of a complex Gaussian
//! matrix with the phase convention fixed on the R diagonal.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;

use super::density::DensityMatrix;
use super::layout::RegisterLayout;
use super::state::StateVector;

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Complex matrix with independent standard Gaussian entries.
pub fn ginibre<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

/// Isometry with `cols` orthonormal columns in dimension `rows`.
pub fn random_isometry<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = ginibre(rows, cols, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    // Fix the phase ambiguity so the distribution is uniform.
    for k in 0..cols {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for row in 0..rows {
                q[(row, k)] *= phase.conj();
            }
        }
    }
    q
}

/// Haar-distributed unitary.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    random_isometry(dim, dim, rng)
}

/// Uniformly random pure state on a register.
pub fn random_pure_state<R: Rng>(layout: RegisterLayout, rng: &mut R) -> StateVector {
    let dim = layout.total_dim();
    let mut amps = DVector::from_fn(dim, |_, _| gaussian_complex(rng));
    let norm = amps.norm();
    amps /= Complex64::new(norm, 0.0);
    StateVector::from_parts_unchecked(layout, amps)
}

/// Random mixed state of the given rank, from a partial-trace purification.
pub fn random_density_matrix<R: Rng>(
    layout: RegisterLayout,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let dim = layout.total_dim();
    let rank = rank.clamp(1, dim);
    let g = ginibre(dim, rank, rng);
    let mut m = &g * g.adjoint();
    let trace = m.trace().re;
    m /= Complex64::new(trace, 0.0);
    DensityMatrix::new(layout, m)
}
