//! Scenario runners: each builds states through the library and returns a
//! JSON result document next to a plain-text table of the same numbers.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use qbond::bonds::{
    covalent_qubit, covalent_qutrit, unified_state, CovalentAmplitudes, HBondAmplitudes,
};
use qbond::entanglement::{entropy_of_entanglement, eof_2q, eof_minimize, RoofOptions};
use qbond::environment::{computational_basis, dephase, thermal_state_from_weights, EigenSystem};
use qbond::qmath::{RegisterLayout, StateVector};
use qbond::recognition::{
    capacity, classify, min_bonds, resting_bridge_state, swap_protocol, EigenBasis,
    LigandProfile, Verdict, CLASSIFY_TOL, INTER_LABELS,
};

use crate::config::{
    self, CapacityCfg, CovalentCfg, HbondCfg, LigandSpec, Mode, RecognizeCfg, Scenario, SwapCfg,
    ThermalCfg,
};
use crate::doc::{complex, fmt_c, fmt_f, num, state_map, table};
use crate::CliError;

pub struct ScenarioReport {
    pub doc: Value,
    pub table: String,
}

pub fn run(scenario: &Scenario, seed: u64) -> Result<ScenarioReport, CliError> {
    match scenario {
        Scenario::Covalent(cfg) => covalent(cfg),
        Scenario::Hbond(cfg) => hbond(cfg),
        Scenario::Thermal(cfg) => thermal(cfg, seed),
        Scenario::Swap(cfg) => swap(cfg, seed),
        Scenario::Recognize(cfg) => recognize(cfg),
        Scenario::Capacity(cfg) => capacity_report(cfg),
    }
}

fn covalent(cfg: &CovalentCfg) -> Result<ScenarioReport, CliError> {
    let triple = config::group("alpha/beta/gamma", &[cfg.alpha, cfg.beta, cfg.gamma])?;
    let amps = match cfg.split {
        None => CovalentAmplitudes::symmetric(triple[0], triple[1], triple[2])?,
        Some(split) => {
            let pair = config::group("split", &split)?;
            CovalentAmplitudes::new(pair[0], pair[1], triple[0], triple[1], triple[2])?
        }
    };
    let qubit = covalent_qubit(&amps)?;
    let qutrit = covalent_qutrit(&amps)?;
    let e_qubit = entropy_of_entanglement(&qubit, &["e1"])?;
    let e_qutrit = entropy_of_entanglement(&qutrit, &["x"])?;

    let doc = json!({
        "kind": "covalent",
        "amplitudes": {
            "alpha": complex(amps.alpha),
            "beta": complex(amps.beta),
            "gamma": complex(amps.gamma),
            "split": [complex(amps.a), complex(amps.b)],
        },
        "electron_pair": {
            "state": state_map(&qubit),
            "entanglement": num(e_qubit),
        },
        "atom_occupation": {
            "state": state_map(&qutrit),
            "entanglement": num(e_qutrit),
        },
    });
    let rows = vec![
        ("scenario".into(), "covalent".into()),
        ("alpha".into(), fmt_c(amps.alpha)),
        ("beta".into(), fmt_c(amps.beta)),
        ("gamma".into(), fmt_c(amps.gamma)),
        ("electron split".into(), format!("{}, {}", fmt_c(amps.a), fmt_c(amps.b))),
        ("electron-pair entanglement".into(), fmt_f(e_qubit)),
        ("atom-occupation entanglement".into(), fmt_f(e_qutrit)),
    ];
    Ok(ScenarioReport { doc, table: table(&rows) })
}

fn hbond(cfg: &HbondCfg) -> Result<ScenarioReport, CliError> {
    let c = config::group("c", &cfg.c)?;
    let mode = cfg.mode.unwrap_or(Mode::Proton);
    let amps = match mode {
        Mode::Proton => HBondAmplitudes::proton(c[0], c[1], c[2])?,
        Mode::Electron => HBondAmplitudes::electron(c[0], c[1], c[2])?,
    };
    let state = unified_state(&amps)?;
    let e = entropy_of_entanglement(&state, &["x1"])?;
    let mode_name = match mode {
        Mode::Proton => "proton",
        Mode::Electron => "electron",
    };

    let doc = json!({
        "kind": "hbond",
        "mode": mode_name,
        "state": state_map(&state),
        "entanglement": num(e),
    });
    let mut rows = vec![
        ("scenario".into(), "hbond".into()),
        ("mode".into(), mode_name.into()),
        (
            "c".into(),
            format!("{}, {}, {}", fmt_c(amps.c1), fmt_c(amps.c2), fmt_c(amps.c3)),
        ),
    ];
    push_state_rows(&mut rows, &state);
    rows.push(("entanglement".into(), fmt_f(e)));
    Ok(ScenarioReport { doc, table: table(&rows) })
}

fn thermal(cfg: &ThermalCfg, seed: u64) -> Result<ScenarioReport, CliError> {
    if cfg.weights.is_empty() {
        return Err(CliError::Config("'weights' must not be empty".into()));
    }
    let mut weights = cfg.weights.clone();
    config::weights("weights", &mut weights)?;
    let levels: Vec<StateVector> = match &cfg.levels {
        None => {
            if weights.len() != 3 {
                return Err(CliError::Config(
                    "default levels are the three tunneling combinations; \
                     give exactly 3 weights or explicit 'levels'"
                        .into(),
                ));
            }
            default_levels()?
        }
        Some(raw) => {
            if raw.len() != weights.len() {
                return Err(CliError::Config(
                    "'levels' and 'weights' must have the same length".into(),
                ));
            }
            raw.iter()
                .enumerate()
                .map(|(k, t)| {
                    let c = config::group(&format!("levels[{k}]"), t)?;
                    Ok(unified_state(&HBondAmplitudes::proton(c[0], c[1], c[2])?)?)
                })
                .collect::<Result<_, CliError>>()?
        }
    };
    let sys = EigenSystem::from_weights(weights.iter().copied().zip(levels).collect())?;
    let rho = thermal_state_from_weights(&sys)?;
    let closed = eof_2q(&rho)?;
    let roof = eof_minimize(&rho, &["x1"], &RoofOptions { seed, ..RoofOptions::default() })?;
    let deph = dephase(&rho, &computational_basis(rho.layout()))?;
    let deph_e = eof_2q(&deph)?;

    let mut populations = Map::new();
    let mut pop_rows = Vec::new();
    for i in 0..deph.dim() {
        let key: String = deph
            .layout()
            .digits_of(i)
            .iter()
            .map(|d| d.to_string())
            .collect();
        let p = deph.matrix()[(i, i)].re;
        populations.insert(key.clone(), num(p));
        pop_rows.push((format!("population {key}"), fmt_f(p)));
    }

    let doc = json!({
        "kind": "thermal",
        "seed": seed,
        "weights": weights.iter().map(|w| num(*w)).collect::<Vec<_>>(),
        "entanglement": {
            "closed_form": num(closed),
            "roof": { "value": num(roof.value), "converged": roof.converged },
        },
        "dephased": {
            "populations": populations,
            "entanglement": num(deph_e),
        },
    });
    let mut rows = vec![
        ("scenario".into(), "thermal".into()),
        ("seed".into(), seed.to_string()),
        (
            "weights".into(),
            weights.iter().map(|w| fmt_f(*w)).collect::<Vec<_>>().join(", "),
        ),
        ("entanglement (closed form)".into(), fmt_f(closed)),
        (
            "entanglement (roof search)".into(),
            format!(
                "{}{}",
                fmt_f(roof.value),
                if roof.converged { "" } else { " (not converged)" }
            ),
        ),
    ];
    rows.extend(pop_rows);
    rows.push(("dephased entanglement".into(), fmt_f(deph_e)));
    Ok(ScenarioReport { doc, table: table(&rows) })
}

/// Symmetric, one-node and antisymmetric tunneling combinations.
fn default_levels() -> Result<Vec<StateVector>, CliError> {
    let r2 = 2f64.sqrt().recip();
    let r3 = 3f64.sqrt().recip();
    let r6 = 6f64.sqrt().recip();
    let triples = [[r3, r3, r3], [r6, r6, -2.0 * r6], [r2, -r2, 0.0]];
    triples
        .iter()
        .map(|t| Ok(unified_state(&HBondAmplitudes::proton_real(t[0], t[1], t[2])?)?))
        .collect()
}

fn swap(cfg: &SwapCfg, seed: u64) -> Result<ScenarioReport, CliError> {
    if !(cfg.c.len() == 2 || cfg.c.len() == 3) {
        return Err(CliError::Config(format!(
            "field 'c' wants two amplitudes (or three with a vanishing third), got {}",
            cfg.c.len()
        )));
    }
    let c = config::group("c", &cfg.c)?;
    if c.len() == 3 && c[2].norm() > 1e-9 {
        return Err(CliError::Config(
            "the handover pair carries no doubly-occupied weight: the third \
             amplitude must be zero"
                .into(),
        ));
    }
    let ligand = LigandProfile::new(
        "input",
        HBondAmplitudes::proton(c[0], c[1], Complex64::ZERO)?,
    );
    let bridge = match &cfg.bridge {
        None => resting_bridge_state(),
        Some(pair) => {
            let b = config::group("bridge", pair)?;
            StateVector::new(RegisterLayout::qubits(&["x2"])?, b)?
        }
    };
    let before_state = ligand.bond_state(&INTER_LABELS)?;
    let before = entropy_of_entanglement(&before_state, &[INTER_LABELS[0]])?;
    let out = swap_protocol(&ligand, &bridge, seed)?;
    let after = entropy_of_entanglement(&out.final_state, &["x1"])?;
    let t = &out.transcript;

    let doc = json!({
        "kind": "swap",
        "seed": seed,
        "outcome": t.outcome_label.to_string(),
        "probability": num(t.probability),
        "corrected": t.corrected,
        "final_state": state_map(&out.final_state),
        "entanglement": { "before": num(before), "after": num(after) },
    });
    let mut rows = vec![
        ("scenario".into(), "swap".into()),
        ("seed".into(), seed.to_string()),
        ("outcome".into(), t.outcome_label.to_string()),
        ("probability".into(), fmt_f(t.probability)),
        ("corrected".into(), t.corrected.to_string()),
    ];
    push_state_rows(&mut rows, &out.final_state);
    rows.push(("entanglement before".into(), fmt_f(before)));
    rows.push(("entanglement after".into(), fmt_f(after)));
    Ok(ScenarioReport { doc, table: table(&rows) })
}

fn recognize(cfg: &RecognizeCfg) -> Result<ScenarioReport, CliError> {
    if cfg.ligands.is_empty() {
        return Err(CliError::Config("'ligands' must not be empty".into()));
    }
    let tol = cfg.tol.unwrap_or(CLASSIFY_TOL);
    if !(tol > 0.0 && tol < 0.5) {
        return Err(CliError::Config(format!(
            "'tol' must lie strictly between 0 and 0.5, got {tol}"
        )));
    }
    let basis = EigenBasis::standard();
    let mut items = Vec::new();
    let mut rows = vec![
        ("scenario".into(), "recognize".into()),
        ("tolerance".into(), fmt_f(tol)),
    ];
    for spec in &cfg.ligands {
        let profile = ligand_profile(spec)?;
        let outcome = classify(&profile, &basis, tol)?;
        let (verdict_name, conformations): (&str, Value) = match &outcome.verdict {
            Verdict::Agonist(v) => (
                "agonist",
                Value::Array(v.iter().map(|&j| Value::from(j as u64)).collect()),
            ),
            Verdict::Antagonist => ("antagonist", Value::Null),
        };
        let mut distribution = Map::new();
        for (label, w) in &outcome.conformation_distribution {
            distribution.insert(label.clone(), num(*w));
        }
        items.push(json!({
            "name": profile.name,
            "verdict": verdict_name,
            "conformations": conformations,
            "distribution": distribution,
            "coherence_residual": num(outcome.coherence_residual),
        }));

        let verdict_text = match &outcome.verdict {
            Verdict::Agonist(v) => format!(
                "agonist, conformation {}",
                v.iter().map(|j| j.to_string()).collect::<Vec<_>>().join(", ")
            ),
            Verdict::Antagonist => "antagonist".into(),
        };
        rows.push((format!("ligand {}", profile.name), verdict_text));
        rows.push((
            "  distribution".into(),
            outcome
                .conformation_distribution
                .iter()
                .map(|(l, w)| format!("{l} {}", fmt_f(*w)))
                .collect::<Vec<_>>()
                .join(", "),
        ));
        rows.push(("  coherence residual".into(), fmt_f(outcome.coherence_residual)));
    }
    let doc = json!({
        "kind": "recognize",
        "tolerance": num(tol),
        "ligands": items,
    });
    Ok(ScenarioReport { doc, table: table(&rows) })
}

fn ligand_profile(spec: &LigandSpec) -> Result<LigandProfile, CliError> {
    match spec {
        LigandSpec::Preset(name) => match name.as_str() {
            "B" => Ok(LigandProfile::ligand_b()),
            "C" => Ok(LigandProfile::ligand_c()),
            "D" => Ok(LigandProfile::ligand_d()),
            other => Err(CliError::Config(format!(
                "unknown ligand preset '{other}', presets are B, C and D"
            ))),
        },
        LigandSpec::Custom { name, c } => {
            let amps = config::group(&format!("ligand '{name}'"), c)?;
            Ok(LigandProfile::new(
                name.clone(),
                HBondAmplitudes::proton(amps[0], amps[1], amps[2])?,
            ))
        }
    }
}

fn capacity_report(cfg: &CapacityCfg) -> Result<ScenarioReport, CliError> {
    let count = capacity(cfg.n)?;
    let mut doc = json!({
        "kind": "capacity",
        "n": cfg.n,
        "capacity": count,
    });
    let mut rows = vec![
        ("scenario".into(), "capacity".into()),
        ("bonds".into(), cfg.n.to_string()),
        ("distinguishable ligands".into(), count.to_string()),
    ];
    if let Some(n_ligands) = cfg.ligands {
        let mb = min_bonds(n_ligands)?;
        doc["min_bonds"] = json!({
            "ligands": n_ligands,
            "exact": num(mb.exact),
            "rounded": num(mb.rounded),
        });
        rows.push((
            format!("bonds for {n_ligands} ligands"),
            format!("{} (rounds to {})", fmt_f(mb.exact), fmt_f(mb.rounded)),
        ));
    }
    Ok(ScenarioReport { doc, table: table(&rows) })
}

fn push_state_rows(rows: &mut Vec<(String, String)>, state: &StateVector) {
    for (i, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let key: String = state
            .layout()
            .digits_of(i)
            .iter()
            .map(|d| d.to_string())
            .collect();
        rows.push((format!("amplitude {key}"), fmt_c(*amp)));
    }
}
