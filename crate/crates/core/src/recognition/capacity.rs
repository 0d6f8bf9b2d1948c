//! Counting distinguishable conformational responses.

use crate::error::{Error, Result};

/// Number of distinct definite responses `n` three-eigenstate bonds can
/// trigger: 3^n - 1, discounting the all-ground tuple that leaves the
/// receptor resting.
pub fn capacity(n: u32) -> Result<u64> {
    if n == 0 || n > 20 {
        return Err(Error::InvalidArgument(format!(
            "bond count must sit in 1..=20, got {n}"
        )));
    }
    Ok(3u64.pow(n) - 1)
}

/// Bond count needed for at least `n_ligands` distinct responses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinBonds {
    /// Exact value log3(n_ligands + 1); fractional bonds are not physical,
    /// so callers round up for a realizable receptor.
    pub exact: f64,
    /// The exact value rounded to two decimal places, the resolution the
    /// quantity is usually quoted at.
    pub rounded: f64,
}

pub fn min_bonds(n_ligands: u64) -> Result<MinBonds> {
    if n_ligands == 0 {
        return Err(Error::InvalidArgument(
            "at least one ligand is needed".into(),
        ));
    }
    let exact = ((n_ligands + 1) as f64).ln() / 3f64.ln();
    Ok(MinBonds {
        exact,
        rounded: (exact * 100.0).round() / 100.0,
    })
}
