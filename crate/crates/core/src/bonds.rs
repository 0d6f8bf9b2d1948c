//! Constructors for qubit and qutrit bond-state representations.
//!
//! A covalent bond between atoms X and Y is a coherent superposition of one
//! covalent and two ionic structures. Two encodings are provided: a
//! two-qubit picture where each shared electron is a qubit (|0> on X, |1>
//! on Y) and a two-qutrit picture where each atom counts its bonding
//! electrons (basis |0>, |1>, |2> by occupation). Hydrogen bonds extend the
//! qutrit picture with molecular orbitals, or compress to two qubits that
//! track which heavy atom holds the bridging proton or the transferred
//! charge.
//!
//! A caveat on the two-qubit electron picture: shared electrons are
//! identical particles, so the formal entanglement between the electron
//! labels of a pure covalent superposition a|01> + b|10> is not physically
//! extractable. The constructors report the label entanglement as computed;
//! interpreting it is left to the caller.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmath::{RegisterLayout, StateVector};
use crate::tol;

/// Amplitudes of the generic covalent-bond ground state.
///
/// `alpha`, `beta`, `gamma` weigh the covalent structure and the two ionic
/// structures (both electrons on X, both on Y). `a`, `b` split the covalent
/// term between the two electron assignments in the qubit picture; the
/// qutrit picture ignores them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovalentAmplitudes {
    pub a: Complex64,
    pub b: Complex64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl CovalentAmplitudes {
    pub fn new(
        a: Complex64,
        b: Complex64,
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
    ) -> Result<Self> {
        let pair = (a.norm_sqr() + b.norm_sqr() - 1.0).abs();
        if pair > tol::STRUCTURAL {
            return Err(Error::NotNormalized { deviation: pair });
        }
        let triple = (alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr() - 1.0).abs();
        if triple > tol::STRUCTURAL {
            return Err(Error::NotNormalized { deviation: triple });
        }
        Ok(Self { a, b, alpha, beta, gamma })
    }

    /// Covalent term shared evenly between the electron assignments.
    pub fn symmetric(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(s, s, alpha, beta, gamma)
    }

    /// Builds amplitudes from the products a*alpha and b*alpha.
    ///
    /// Convenient when a state is quoted term by term. A vanishing covalent
    /// weight leaves the (a, b) split undetermined; it defaults to (1, 0).
    pub fn from_products(
        a_alpha: Complex64,
        b_alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
    ) -> Result<Self> {
        let weight = (a_alpha.norm_sqr() + b_alpha.norm_sqr()).sqrt();
        if weight <= tol::STRUCTURAL {
            return Self::new(Complex64::ONE, Complex64::ZERO, Complex64::ZERO, beta, gamma);
        }
        let alpha = Complex64::new(weight, 0.0);
        Self::new(a_alpha / alpha, b_alpha / alpha, alpha, beta, gamma)
    }
}

/// Which particle tunnels across a hydrogen bridge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TunnelingMode {
    Electron,
    Proton,
}

/// Amplitudes of the unified two-qubit hydrogen-bond state.
///
/// The encoding is |psi1> = |10> (donor bonded), |psi2> = |01> (partner
/// bonded) and |psi3> = |00> (neither), so a bond reads
/// c1|10> + c2|01> + c3|00>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HBondAmplitudes {
    pub c1: Complex64,
    pub c2: Complex64,
    pub c3: Complex64,
    pub mode: TunnelingMode,
}

impl HBondAmplitudes {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64, mode: TunnelingMode) -> Result<Self> {
        let deviation = (c1.norm_sqr() + c2.norm_sqr() + c3.norm_sqr() - 1.0).abs();
        if deviation > tol::STRUCTURAL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { c1, c2, c3, mode })
    }

    pub fn proton(c1: Complex64, c2: Complex64, c3: Complex64) -> Result<Self> {
        Self::new(c1, c2, c3, TunnelingMode::Proton)
    }

    pub fn electron(c1: Complex64, c2: Complex64, c3: Complex64) -> Result<Self> {
        Self::new(c1, c2, c3, TunnelingMode::Electron)
    }

    /// Real coefficient shortcut used all over the worked examples.
    pub fn proton_real(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        Self::proton(
            Complex64::new(c1, 0.0),
            Complex64::new(c2, 0.0),
            Complex64::new(c3, 0.0),
        )
    }
}

/// Two-electron qubit state a alpha|01> + b alpha|10> + beta|00> + gamma|11>.
///
/// Register order is (electron 1, electron 2); |0> marks residence on atom
/// X and |1> on atom Y.
pub fn covalent_qubit(amps: &CovalentAmplitudes) -> Result<StateVector> {
    let layout = RegisterLayout::qubits(&["e1", "e2"])?;
    StateVector::new(
        layout,
        vec![
            amps.beta,
            amps.a * amps.alpha,
            amps.b * amps.alpha,
            amps.gamma,
        ],
    )
}

/// Two-atom qutrit state alpha|11> + beta|20> + gamma|02> over (X, Y).
///
/// Each local basis counts bonding electrons on the atom, so the covalent
/// structure is |11> and the ionic structures pile both electrons on one
/// side. The (a, b) electron split plays no role here.
pub fn covalent_qutrit(amps: &CovalentAmplitudes) -> Result<StateVector> {
    let layout = RegisterLayout::qutrits(&["x", "y"])?;
    let mut amplitudes = vec![Complex64::ZERO; 9];
    amplitudes[1 * 3 + 1] = amps.alpha;
    amplitudes[2 * 3 + 0] = amps.beta;
    amplitudes[0 * 3 + 2] = amps.gamma;
    StateVector::new(layout, amplitudes)
}

/// Classical hydrogen bridge (alpha'|11> + beta'|20>)_(X1 H) tensor |2>_X2.
///
/// The acceptor keeps its lone pair untouched, so no entanglement can form
/// across the (X1 H) | X2 cut.
pub fn classical_hbond(alpha_p: Complex64, beta_p: Complex64) -> Result<StateVector> {
    let deviation = (alpha_p.norm_sqr() + beta_p.norm_sqr() - 1.0).abs();
    if deviation > tol::STRUCTURAL {
        return Err(Error::NotNormalized { deviation });
    }
    let bond_layout = RegisterLayout::qutrits(&["x1", "h"])?;
    let mut bond = vec![Complex64::ZERO; 9];
    bond[1 * 3 + 1] = alpha_p;
    bond[2 * 3 + 0] = beta_p;
    let bond = StateVector::new(bond_layout, bond)?;
    let acceptor =
        StateVector::basis_state(RegisterLayout::qutrits(&["x2"])?, &[2])?;
    bond.tensor(&acceptor)
}

/// Charge-transfer bridge |2>_sigma tensor (alpha-|02> + delta-|11>) over
/// (sigma*, X2).
///
/// `sigma` and `sigma*` are the bonding and antibonding orbitals of the
/// donor covalent bond; a nonzero delta- moves one acceptor lone-pair
/// electron into the antibonding orbital.
pub fn covalent_hbond_electron(alpha_m: Complex64, delta_m: Complex64) -> Result<StateVector> {
    let deviation = (alpha_m.norm_sqr() + delta_m.norm_sqr() - 1.0).abs();
    if deviation > tol::STRUCTURAL {
        return Err(Error::NotNormalized { deviation });
    }
    let layout = RegisterLayout::qutrits(&["sigma", "sigma_star", "x2"])?;
    let mut amplitudes = vec![Complex64::ZERO; 27];
    // |2>_sigma (x) (alpha-|02> + delta-|11>)_(sigma* x2)
    amplitudes[2 * 9 + 0 * 3 + 2] = alpha_m;
    amplitudes[2 * 9 + 1 * 3 + 1] = delta_m;
    StateVector::new(layout, amplitudes)
}

/// Proton-delocalization state alpha+|10> + delta+|01> over qubits (X1, X2).
///
/// |1> marks the heavy atom currently binding the bridging proton.
pub fn covalent_hbond_proton(alpha_p: Complex64, delta_p: Complex64) -> Result<StateVector> {
    let deviation = (alpha_p.norm_sqr() + delta_p.norm_sqr() - 1.0).abs();
    if deviation > tol::STRUCTURAL {
        return Err(Error::NotNormalized { deviation });
    }
    let layout = RegisterLayout::qubits(&["x1", "x2"])?;
    StateVector::new(
        layout,
        vec![Complex64::ZERO, delta_p, alpha_p, Complex64::ZERO],
    )
}

/// Unified two-qubit hydrogen-bond state c1|10> + c2|01> + c3|00>.
///
/// Register order is (donor, acceptor), labeled (x1, x2).
pub fn unified_state(amps: &HBondAmplitudes) -> Result<StateVector> {
    let layout = RegisterLayout::qubits(&["x1", "x2"])?;
    StateVector::new(
        layout,
        vec![amps.c3, amps.c2, amps.c1, Complex64::ZERO],
    )
}

/// Shifts ionic weight onto beta, as electrostatic attraction of an
/// approaching acceptor does to a donor X-H bond.
///
/// Applies to amplitudes with gamma = 0 (the hydrogen end has no electron
/// affinity to speak of). The covalent weight is renormalized to
/// sqrt(1 - |beta_new|^2) keeping its phase, so |alpha| strictly drops.
pub fn polarize(amps: &CovalentAmplitudes, beta_new: Complex64) -> Result<CovalentAmplitudes> {
    if amps.gamma.norm() > tol::STRUCTURAL {
        return Err(Error::InvalidArgument(
            "polarize acts on X-H amplitudes with gamma = 0".into(),
        ));
    }
    if beta_new.norm() <= amps.beta.norm() {
        return Err(Error::InvalidArgument(format!(
            "ionic weight must increase: |beta_new| = {:.6} <= |beta| = {:.6}",
            beta_new.norm(),
            amps.beta.norm()
        )));
    }
    if beta_new.norm() > 1.0 + tol::STRUCTURAL {
        return Err(Error::NotNormalized {
            deviation: beta_new.norm() - 1.0,
        });
    }
    let magnitude = (1.0 - beta_new.norm_sqr()).max(0.0).sqrt();
    let phase = if amps.alpha.norm() > 0.0 {
        amps.alpha / amps.alpha.norm()
    } else {
        Complex64::ONE
    };
    CovalentAmplitudes::new(
        amps.a,
        amps.b,
        phase * magnitude,
        beta_new,
        Complex64::ZERO,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qubit_constructor_places_every_term() {
        let amps = CovalentAmplitudes::from_products(c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0))
            .unwrap();
        let state = covalent_qubit(&amps).unwrap();
        assert_relative_eq!(state.amplitude(&[0, 1]).re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[1, 0]).re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[0, 0]).re, 0.5, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[1, 1]).re, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn pure_covalent_qubit_state() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let amps =
            CovalentAmplitudes::symmetric(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let state = covalent_qubit(&amps).unwrap();
        assert_relative_eq!(state.amplitude(&[0, 1]).re, s, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[1, 0]).re, s, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[0, 0]).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn qutrit_constructor_uses_occupation_basis() {
        let amps = CovalentAmplitudes::new(
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.6, 0.0),
            c(0.0, 0.8),
            c(0.0, 0.0),
        )
        .unwrap();
        let state = covalent_qutrit(&amps).unwrap();
        assert_relative_eq!(state.amplitude(&[1, 1]).re, 0.6, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[2, 0]).im, 0.8, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[0, 2]).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn classical_bridge_keeps_acceptor_lone_pair() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let state = classical_hbond(c(s, 0.0), c(s, 0.0)).unwrap();
        assert_relative_eq!(state.amplitude(&[1, 1, 2]).re, s, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[2, 0, 2]).re, s, epsilon = 1e-12);
        // every amplitude with X2 != 2 vanishes
        for x1 in 0..3 {
            for h in 0..3 {
                for x2 in 0..2 {
                    assert_eq!(state.amplitude(&[x1, h, x2]), Complex64::ZERO);
                }
            }
        }
    }

    #[test]
    fn charge_transfer_state_structure() {
        let state = covalent_hbond_electron(c(0.8, 0.0), c(0.6, 0.0)).unwrap();
        assert_relative_eq!(state.amplitude(&[2, 0, 2]).re, 0.8, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[2, 1, 1]).re, 0.6, epsilon = 1e-12);
    }

    #[test]
    fn proton_state_structure() {
        let state = covalent_hbond_proton(c(0.8, 0.0), c(0.6, 0.0)).unwrap();
        assert_relative_eq!(state.amplitude(&[1, 0]).re, 0.8, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[0, 1]).re, 0.6, epsilon = 1e-12);
    }

    #[test]
    fn unified_state_matches_encoding() {
        let r3 = 3f64.sqrt().recip();
        let amps = HBondAmplitudes::proton_real(r3, r3, r3).unwrap();
        let state = unified_state(&amps).unwrap();
        assert_relative_eq!(state.amplitude(&[1, 0]).re, r3, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[0, 1]).re, r3, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[0, 0]).re, r3, epsilon = 1e-12);
        assert_relative_eq!(state.amplitude(&[1, 1]).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn polarize_follows_renormalization_rule() {
        let amps = CovalentAmplitudes::new(
            c(1.0, 0.0),
            c(0.0, 0.0),
            c((1f64 - 0.09).sqrt(), 0.0),
            c(0.3, 0.0),
            c(0.0, 0.0),
        )
        .unwrap();
        let shifted = polarize(&amps, c(0.5, 0.0)).unwrap();
        assert_relative_eq!(shifted.alpha.re, 0.75f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(shifted.beta.re, 0.5, epsilon = 1e-12);
        assert!(shifted.alpha.norm_sqr() < amps.alpha.norm_sqr());

        let strong = polarize(&amps, c(0.9, 0.0)).unwrap();
        assert_relative_eq!(strong.alpha.norm_sqr(), 0.19, epsilon = 1e-12);
    }

    #[test]
    fn polarize_rejects_non_increase() {
        let amps = CovalentAmplitudes::new(
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        )
        .unwrap();
        assert!(polarize(&amps, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn normalization_is_enforced() {
        assert!(CovalentAmplitudes::new(
            c(1.0, 0.0),
            c(0.4, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0)
        )
        .is_err());
        assert!(HBondAmplitudes::proton_real(1.0, 0.2, 0.0).is_err());
        assert!(classical_hbond(c(1.0, 0.0), c(0.2, 0.0)).is_err());
    }
}
