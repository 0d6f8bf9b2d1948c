//! Recomputes the published reference values.
//!
//! Each claim freezes one quoted number together with the code path that
//! must reproduce it. Tolerances: 1e-4 for values quoted to six decimals,
//! 1e-3 for the stochastic roof search, 1e-2 where the source itself
//! rounds to two decimals.

use num_complex::Complex64;
use serde_json::{json, Value};

use qbond::bonds::{
    classical_hbond, covalent_hbond_electron, covalent_qubit, covalent_qutrit, unified_state,
    CovalentAmplitudes, HBondAmplitudes,
};
use qbond::entanglement::{entropy_of_entanglement, eof_2q, eof_minimize, RoofOptions};
use qbond::environment::{computational_basis, dephase, thermal_state_from_weights, EigenSystem};
use qbond::qmath::{DensityMatrix, RegisterLayout, StateVector};
use qbond::recognition::{
    capacity, classify, decompose_in_eigenbasis, imprint_conformation, min_bonds,
    reduced_marginals, resting_bridge_state, swap_protocol_on_outcome, ConformationRegister,
    EigenBasis, LigandProfile, SwapOutcome, Verdict, CLASSIFY_TOL, INTER_LABELS, INTRA_LABELS,
};

use crate::doc::{fmt_f, num};
use crate::CliError;

const DEFAULT_TOL: f64 = 1e-4;
const ROOF_TOL: f64 = 1e-3;
const ROUNDED_TOL: f64 = 1e-2;

pub struct Claim {
    pub id: &'static str,
    pub detail: &'static str,
    pub reference: f64,
    pub tolerance: f64,
    pub compute: fn() -> qbond::Result<f64>,
}

pub struct ClaimRow {
    pub id: &'static str,
    pub detail: &'static str,
    pub reference: f64,
    pub computed: f64,
    pub diff: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn intra(c1: f64, c2: f64, c3: f64) -> qbond::Result<StateVector> {
    unified_state(&HBondAmplitudes::proton_real(c1, c2, c3)?)
}

/// Symmetric, one-node and antisymmetric tunneling combinations.
fn tunneling_state(k: usize) -> qbond::Result<StateVector> {
    let r2 = 2f64.sqrt().recip();
    let r3 = 3f64.sqrt().recip();
    let r6 = 6f64.sqrt().recip();
    match k {
        0 => intra(r3, r3, r3),
        1 => intra(r6, r6, -2.0 * r6),
        _ => intra(r2, -r2, 0.0),
    }
}

fn thermal_rho() -> qbond::Result<DensityMatrix> {
    let sys = EigenSystem::from_weights(vec![
        (0.7, tunneling_state(0)?),
        (0.2, tunneling_state(1)?),
        (0.1, tunneling_state(2)?),
    ])?;
    thermal_state_from_weights(&sys)
}

fn dephased_rho() -> qbond::Result<DensityMatrix> {
    let rho = thermal_rho()?;
    dephase(&rho, &computational_basis(rho.layout()))
}

fn dephased_population(index: usize) -> qbond::Result<f64> {
    Ok(dephased_rho()?.matrix()[(index, index)].re)
}

fn swap_branch(outcome: usize) -> qbond::Result<SwapOutcome> {
    let ligand = LigandProfile::new("input", HBondAmplitudes::proton_real(0.6, 0.8, 0.0)?);
    swap_protocol_on_outcome(&ligand, &resting_bridge_state(), outcome)
}

fn swap_target() -> qbond::Result<StateVector> {
    StateVector::new(
        RegisterLayout::qubits(&["x1", "x2"])?,
        vec![Complex64::ZERO, cr(0.6), cr(0.8), Complex64::ZERO],
    )
}

fn swap_overlap(outcome: usize) -> qbond::Result<f64> {
    let out = swap_branch(outcome)?;
    Ok(out.final_state.inner(&swap_target()?)?.norm())
}

fn ligand_entanglement(profile: LigandProfile) -> qbond::Result<f64> {
    let state = profile.bond_state(&INTER_LABELS)?;
    entropy_of_entanglement(&state, &[INTER_LABELS[0]])
}

fn basis_weight(profile: LigandProfile, j: usize) -> qbond::Result<f64> {
    let state = profile.bond_state(&INTRA_LABELS)?;
    Ok(decompose_in_eigenbasis(&state, &EigenBasis::standard())?[j].norm_sqr())
}

fn ligand_d_lambda(j: usize) -> qbond::Result<Complex64> {
    let state = LigandProfile::ligand_d().bond_state(&INTRA_LABELS)?;
    Ok(decompose_in_eigenbasis(&state, &EigenBasis::standard())?[j])
}

fn agonist_index(profile: LigandProfile) -> qbond::Result<f64> {
    let outcome = classify(&profile, &EigenBasis::standard(), CLASSIFY_TOL)?;
    Ok(match outcome.verdict {
        Verdict::Agonist(v) => v.first().map(|&j| j as f64).unwrap_or(0.0),
        Verdict::Antagonist => 0.0,
    })
}

/// Worst elementwise deviation of the better-matching reduced state.
fn marginal_deviation(profile: LigandProfile, target: [[f64; 2]; 2]) -> qbond::Result<f64> {
    let (first, second) = reduced_marginals(&profile)?;
    let dev = |m: &DensityMatrix| -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((m.matrix()[(i, j)] - cr(target[i][j])).norm());
            }
        }
        worst
    };
    Ok(dev(&first).min(dev(&second)))
}

fn imprint_eps2_overlap() -> qbond::Result<f64> {
    let basis = EigenBasis::standard();
    let reg = ConformationRegister::default_triplet();
    let out = imprint_conformation(basis.eps(2), &basis, &reg)?;
    let conf = StateVector::basis_state(RegisterLayout::qutrits(&["conf"])?, &[1])?;
    let target = basis.eps(2).tensor(&conf)?;
    Ok(out.inner(&target)?.norm())
}

fn imprint_d_overlap() -> qbond::Result<f64> {
    let basis = EigenBasis::standard();
    let reg = ConformationRegister::default_triplet();
    let bond = LigandProfile::ligand_d().bond_state(&INTRA_LABELS)?;
    let out = imprint_conformation(&bond, &basis, &reg)?;

    let layout = bond.layout().joined(&RegisterLayout::qutrits(&["conf"])?)?;
    let w2 = cr(2.0 * 2f64.sqrt() / 3.0);
    let w3 = cr(1.0 / 3.0);
    let mut amps = vec![Complex64::ZERO; layout.total_dim()];
    for i in 0..4 {
        amps[i * 3 + 1] += w2 * basis.eps(2).amplitudes()[i];
        amps[i * 3 + 2] -= w3 * basis.eps(3).amplitudes()[i];
    }
    let target = StateVector::new(layout, amps)?;
    Ok(out.inner(&target)?.norm())
}

pub fn manifest() -> Vec<Claim> {
    vec![
        Claim {
            id: "ionic_balanced_eof",
            detail: "even ionic split beta = gamma = 1/2 is separable in the electron picture",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let amps = CovalentAmplitudes::symmetric(cr(s), cr(0.5), cr(0.5))?;
                entropy_of_entanglement(&covalent_qubit(&amps)?, &["e1"])
            },
        },
        Claim {
            id: "ionic_flip_eof",
            detail: "sign-flipped ionic split beta = -1/2, gamma = 1/2 is maximally entangled",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let amps = CovalentAmplitudes::symmetric(cr(s), cr(-0.5), cr(0.5))?;
                entropy_of_entanglement(&covalent_qubit(&amps)?, &["e1"])
            },
        },
        Claim {
            id: "ionic_double_flip_eof",
            detail: "flipping both ionic signs beta = gamma = -1/2 restores separability",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let amps = CovalentAmplitudes::symmetric(cr(s), cr(-0.5), cr(-0.5))?;
                entropy_of_entanglement(&covalent_qubit(&amps)?, &["e1"])
            },
        },
        Claim {
            id: "covalent_qutrit_eof",
            detail: "pure covalent bond alpha = 1 is separable in the occupation picture",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let amps = CovalentAmplitudes::symmetric(cr(1.0), cr(0.0), cr(0.0))?;
                entropy_of_entanglement(&covalent_qutrit(&amps)?, &["x"])
            },
        },
        Claim {
            id: "no_transfer_eof",
            detail: "vanishing charge transfer delta- = 0 leaves the acceptor separable",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let state = covalent_hbond_electron(cr(1.0), cr(0.0))?;
                entropy_of_entanglement(&state, &["x2"])
            },
        },
        Claim {
            id: "bridge_embedding_amp",
            detail: "classical bridge with alpha' = 1 sits at |112> of the qutrit register",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: || Ok(classical_hbond(cr(1.0), cr(0.0))?.amplitude(&[1, 1, 2]).norm()),
        },
        Claim {
            id: "classical_bridge_eof",
            detail: "classical bridge carries no entanglement across the acceptor cut",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                entropy_of_entanglement(&classical_hbond(cr(s), cr(s))?, &["x2"])
            },
        },
        Claim {
            id: "eof_eps1",
            detail: "symmetric tunneling combination",
            reference: 0.550048,
            tolerance: DEFAULT_TOL,
            compute: || entropy_of_entanglement(&tunneling_state(0)?, &["x1"]),
        },
        Claim {
            id: "eof_eps2",
            detail: "one-node tunneling combination",
            reference: 0.187299,
            tolerance: DEFAULT_TOL,
            compute: || entropy_of_entanglement(&tunneling_state(1)?, &["x1"]),
        },
        Claim {
            id: "eof_eps3",
            detail: "antisymmetric tunneling combination",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: || entropy_of_entanglement(&tunneling_state(2)?, &["x1"]),
        },
        Claim {
            id: "eof_thermal_closed",
            detail: "0.7/0.2/0.1 mixture, closed two-qubit form",
            reference: 0.283771,
            tolerance: DEFAULT_TOL,
            compute: || eof_2q(&thermal_rho()?),
        },
        Claim {
            id: "eof_thermal_roof",
            detail: "0.7/0.2/0.1 mixture through the convex-roof search",
            reference: 0.283771,
            tolerance: ROOF_TOL,
            compute: || {
                Ok(eof_minimize(&thermal_rho()?, &["x1"], &RoofOptions::default())?.value)
            },
        },
        Claim {
            id: "rho_d_p00",
            detail: "dephased population of |00>",
            reference: 22.0 / 60.0,
            tolerance: DEFAULT_TOL,
            compute: || dephased_population(0),
        },
        Claim {
            id: "rho_d_p01",
            detail: "dephased population of |01>",
            reference: 19.0 / 60.0,
            tolerance: DEFAULT_TOL,
            compute: || dephased_population(1),
        },
        Claim {
            id: "rho_d_p10",
            detail: "dephased population of |10>",
            reference: 19.0 / 60.0,
            tolerance: DEFAULT_TOL,
            compute: || dephased_population(2),
        },
        Claim {
            id: "rho_d_p11",
            detail: "dephased population of |11>",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || dephased_population(3),
        },
        Claim {
            id: "rho_d_zero_eof",
            detail: "dephasing strips all entanglement of formation",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || eof_2q(&dephased_rho()?),
        },
        Claim {
            id: "swap_prob_plus",
            detail: "bridge measurement lands on + with probability 1/2",
            reference: 0.5,
            tolerance: DEFAULT_TOL,
            compute: || Ok(swap_branch(0)?.transcript.probability),
        },
        Claim {
            id: "swap_prob_minus",
            detail: "bridge measurement lands on - with probability 1/2",
            reference: 0.5,
            tolerance: DEFAULT_TOL,
            compute: || Ok(swap_branch(1)?.transcript.probability),
        },
        Claim {
            id: "swap_amp_01",
            detail: "handover of (0.6, 0.8): |<01|final>| keeps the donor weight",
            reference: 0.6,
            tolerance: DEFAULT_TOL,
            compute: || Ok(swap_branch(0)?.final_state.amplitude(&[0, 1]).norm()),
        },
        Claim {
            id: "swap_amp_10",
            detail: "handover of (0.6, 0.8): |<10|final>| keeps the partner weight",
            reference: 0.8,
            tolerance: DEFAULT_TOL,
            compute: || Ok(swap_branch(0)?.final_state.amplitude(&[1, 0]).norm()),
        },
        Claim {
            id: "swap_overlap_plus",
            detail: "+ branch reaches c1|01> + c2|10> exactly",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: || swap_overlap(0),
        },
        Claim {
            id: "swap_overlap_minus",
            detail: "corrected - branch reaches c1|01> + c2|10> exactly",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: || swap_overlap(1),
        },
        Claim {
            id: "swap_entanglement_drift",
            detail: "the handover conserves the entanglement of the pair",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let ligand =
                    LigandProfile::new("input", HBondAmplitudes::proton_real(0.6, 0.8, 0.0)?);
                let before_state = ligand.bond_state(&INTER_LABELS)?;
                let before = entropy_of_entanglement(&before_state, &[INTER_LABELS[0]])?;
                let out = swap_branch(1)?;
                let after = entropy_of_entanglement(&out.final_state, &["x1"])?;
                Ok((before - after).abs())
            },
        },
        Claim {
            id: "ligand_b_eof",
            detail: "fully delocalized ligand bond",
            reference: 0.550048,
            tolerance: DEFAULT_TOL,
            compute: || ligand_entanglement(LigandProfile::ligand_b()),
        },
        Claim {
            id: "ligand_c_eof",
            detail: "one-node ligand bond",
            reference: 0.550048,
            tolerance: DEFAULT_TOL,
            compute: || ligand_entanglement(LigandProfile::ligand_c()),
        },
        Claim {
            id: "basis_b_weight2",
            detail: "ligand B maps onto the second receptor eigenstate",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: || basis_weight(LigandProfile::ligand_b(), 1),
        },
        Claim {
            id: "basis_c_weight3",
            detail: "ligand C maps onto the third receptor eigenstate",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: || basis_weight(LigandProfile::ligand_c(), 2),
        },
        Claim {
            id: "lambda_d_1",
            detail: "ligand D has no resting-eigenstate component",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || Ok(ligand_d_lambda(0)?.norm()),
        },
        Claim {
            id: "lambda_d_2",
            detail: "second eigenstate overlap of ligand D, 2*sqrt(2)/3",
            reference: 2.0 * std::f64::consts::SQRT_2 / 3.0,
            tolerance: DEFAULT_TOL,
            compute: || Ok(ligand_d_lambda(1)?.re),
        },
        Claim {
            id: "lambda_d_3",
            detail: "third eigenstate overlap of ligand D, -1/3",
            reference: -1.0 / 3.0,
            tolerance: DEFAULT_TOL,
            compute: || Ok(ligand_d_lambda(2)?.re),
        },
        Claim {
            id: "imprint_eps2_overlap",
            detail: "eigenstate 2 shifts the register to its second conformation",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: imprint_eps2_overlap,
        },
        Claim {
            id: "imprint_d_overlap",
            detail: "ligand D imprints (2*sqrt(2) eps2 chi2 - eps3 chi3)/3",
            reference: 1.0,
            tolerance: DEFAULT_TOL,
            compute: imprint_d_overlap,
        },
        Claim {
            id: "classify_b_conformation",
            detail: "ligand B reads as an agonist of conformation 2",
            reference: 2.0,
            tolerance: DEFAULT_TOL,
            compute: || agonist_index(LigandProfile::ligand_b()),
        },
        Claim {
            id: "classify_c_conformation",
            detail: "ligand C reads as an agonist of conformation 3",
            reference: 3.0,
            tolerance: DEFAULT_TOL,
            compute: || agonist_index(LigandProfile::ligand_c()),
        },
        Claim {
            id: "marginal_b_dev",
            detail: "docked ligand B marginal (2,1;1,1)/3",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let third = 1.0 / 3.0;
                marginal_deviation(
                    LigandProfile::ligand_b(),
                    [[2.0 * third, third], [third, third]],
                )
            },
        },
        Claim {
            id: "marginal_c_dev",
            detail: "docked ligand C marginal (5,1;1,1)/6",
            reference: 0.0,
            tolerance: DEFAULT_TOL,
            compute: || {
                let sixth = 1.0 / 6.0;
                marginal_deviation(
                    LigandProfile::ligand_c(),
                    [[5.0 * sixth, sixth], [sixth, sixth]],
                )
            },
        },
        Claim {
            id: "capacity_n1",
            detail: "one bond distinguishes 2 ligands",
            reference: 2.0,
            tolerance: DEFAULT_TOL,
            compute: || Ok(capacity(1)? as f64),
        },
        Claim {
            id: "capacity_n2",
            detail: "two bonds distinguish 8 ligands",
            reference: 8.0,
            tolerance: DEFAULT_TOL,
            compute: || Ok(capacity(2)? as f64),
        },
        Claim {
            id: "capacity_n3",
            detail: "three bonds distinguish 26 ligands",
            reference: 26.0,
            tolerance: DEFAULT_TOL,
            compute: || Ok(capacity(3)? as f64),
        },
        Claim {
            id: "min_bonds_n4",
            detail: "bond budget for 4 ligands, quoted rounded to two decimals",
            reference: 1.47,
            tolerance: ROUNDED_TOL,
            compute: || Ok(min_bonds(4)?.exact),
        },
        Claim {
            id: "min_bonds_n6",
            detail: "bond budget for 6 ligands, quoted rounded to two decimals",
            reference: 1.77,
            tolerance: ROUNDED_TOL,
            compute: || Ok(min_bonds(6)?.exact),
        },
    ]
}

pub fn run_manifest() -> Result<Vec<ClaimRow>, CliError> {
    let claims = manifest();
    let mut seen = std::collections::HashSet::new();
    for claim in &claims {
        assert!(seen.insert(claim.id), "duplicate claim id '{}'", claim.id);
    }
    let mut rows = Vec::with_capacity(claims.len());
    for claim in claims {
        let computed = (claim.compute)()
            .map_err(|e| CliError::Numeric(format!("claim '{}': {e}", claim.id)))?;
        let diff = (computed - claim.reference).abs();
        rows.push(ClaimRow {
            id: claim.id,
            detail: claim.detail,
            reference: claim.reference,
            computed,
            diff,
            tolerance: claim.tolerance,
            pass: diff <= claim.tolerance,
        });
    }
    Ok(rows)
}

pub fn document(rows: &[ClaimRow]) -> Value {
    let claims: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "claim": r.id,
                "detail": r.detail,
                "reference": num(r.reference),
                "computed": num(r.computed),
                "abs_diff": num(r.diff),
                "tolerance": num(r.tolerance),
                "pass": r.pass,
            })
        })
        .collect();
    json!({
        "kind": "reproduce-paper",
        "claims": claims,
        "total": rows.len(),
        "failed": rows.iter().filter(|r| !r.pass).count(),
    })
}

pub fn table(rows: &[ClaimRow]) -> String {
    let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(5).max(5);
    let mut out = format!(
        "{:<width$}  {:>14}  {:>14}  {:>9}  {:>5}  status\n",
        "claim", "reference", "computed", "|diff|", "tol"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<width$}  {:>14}  {:>14}  {:>9}  {:>5}  {}\n",
            r.id,
            fmt_f(r.reference),
            fmt_f(r.computed),
            format!("{:.2e}", r.diff),
            format!("{:e}", r.tolerance),
            if r.pass { "pass" } else { "FAIL" },
        ));
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    out.push_str(&format!(
        "{} claims checked, {} passed, {} failed\n",
        rows.len(),
        rows.len() - failed,
        failed
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_cover_the_examples() {
        let claims = manifest();
        let ids: std::collections::HashSet<_> = claims.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), claims.len());
        for required in ["eof_eps1", "rho_d_zero_eof", "capacity_n2"] {
            assert!(ids.contains(required), "missing claim '{required}'");
        }
        assert!(claims.len() >= 40);
    }

    #[test]
    fn every_claim_passes() {
        for row in run_manifest().unwrap() {
            assert!(
                row.pass,
                "claim '{}': reference {}, computed {}, diff {:.3e} > {:.0e}",
                row.id, row.reference, row.computed, row.diff, row.tolerance
            );
        }
    }
}
