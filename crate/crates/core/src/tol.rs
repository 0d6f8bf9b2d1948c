//! Numerical tolerances used by validity checks across the crate.
//!
//! Structural checks (norms, hermiticity, orthonormality) sit at 1e-9,
//! spectral reconstruction at 1e-8. Eigenvalues of positive matrices that
//! land inside [-NEGATIVITY_CLAMP, 0) from round-off are clamped to zero;
//! anything more negative is rejected.

/// Normalization, trace, hermiticity, orthonormality and span checks.
pub const STRUCTURAL: f64 = 1e-9;

/// Maximum tolerated error when rebuilding a matrix from its spectrum.
pub const SPECTRAL: f64 = 1e-8;

/// Round-off negativity absorbed when clamping eigenvalues to zero.
pub const NEGATIVITY_CLAMP: f64 = 1e-9;

/// Convergence threshold for one full sweep of the ensemble optimizer.
pub const ROOF_SWEEP: f64 = 1e-7;

/// Eigenvalues below this count as zero when ranking mixed-state support.
pub const RANK_CUTOFF: f64 = 1e-12;
