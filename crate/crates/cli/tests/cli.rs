//! End-to-end checks of the command line interface: exit codes, the
//! normalization contract, deterministic documents and the reference
//! claim gate.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qbond"))
}

fn write_cfg(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn stderr_text(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn capacity_reports_reference_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "cap.json", r#"{"kind":"capacity","n":3,"ligands":6}"#);
    let out = bin()
        .args(["capacity", "--config"])
        .arg(&cfg)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_text(&out));
    let doc = stdout_json(&out);
    assert_eq!(doc["capacity"], 26);
    assert_eq!(doc["n"], 3);
    assert!((doc["min_bonds"]["exact"].as_f64().unwrap() - 1.77124375).abs() < 1e-6);
    assert!((doc["min_bonds"]["rounded"].as_f64().unwrap() - 1.77).abs() < 1e-12);
}

#[test]
fn thermal_matches_reference_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "th.json", r#"{"kind":"thermal","weights":[0.7,0.2,0.1]}"#);
    let out = bin()
        .args(["thermal", "--config"])
        .arg(&cfg)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_text(&out));
    let doc = stdout_json(&out);
    let closed = doc["entanglement"]["closed_form"].as_f64().unwrap();
    assert!((closed - 0.283771).abs() < 1e-4, "closed form {closed}");
    let roof = doc["entanglement"]["roof"]["value"].as_f64().unwrap();
    assert!((roof - closed).abs() < 1e-3, "roof {roof} vs closed {closed}");
    assert_eq!(doc["dephased"]["populations"]["11"].as_f64().unwrap(), 0.0);
    assert_eq!(doc["dephased"]["entanglement"].as_f64().unwrap(), 0.0);
}

#[test]
fn same_config_and_seed_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let th = write_cfg(&dir, "th.json", r#"{"kind":"thermal","weights":[0.7,0.2,0.1]}"#);
    let sw = write_cfg(&dir, "sw.json", r#"{"kind":"swap","c":[0.6,0.8],"seed":11}"#);
    for cfg in [&th, &sw] {
        let sub = if cfg == &th { "thermal" } else { "swap" };
        let run = || {
            bin()
                .args([sub, "--config"])
                .arg(cfg)
                .args(["--format", "json"])
                .output()
                .unwrap()
        };
        let first = run();
        let second = run();
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "{sub} output is not stable");
        assert!(!first.stdout.is_empty());
    }
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "sw.json", r#"{"kind":"swap","c":[0.6,0.8],"seed":1}"#);
    let out = bin()
        .args(["swap", "--config"])
        .arg(&cfg)
        .args(["--seed", "9", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["seed"], 9);
}

#[test]
fn swap_keeps_the_input_weights() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "sw.json", r#"{"kind":"swap","c":[0.6,0.8]}"#);
    for seed in ["0", "1", "2", "3"] {
        let out = bin()
            .args(["swap", "--config"])
            .arg(&cfg)
            .args(["--seed", seed, "--format", "json"])
            .output()
            .unwrap();
        let doc = stdout_json(&out);
        let amp01 = doc["final_state"]["01"][0].as_f64().unwrap();
        let amp10 = doc["final_state"]["10"][0].as_f64().unwrap();
        assert!((amp01.abs() - 0.6).abs() < 1e-9, "seed {seed}: amp01 {amp01}");
        assert!((amp10.abs() - 0.8).abs() < 1e-9, "seed {seed}: amp10 {amp10}");
        assert_eq!(doc["probability"].as_f64().unwrap(), 0.5);
        let outcome = doc["outcome"].as_str().unwrap();
        assert!(outcome == "+" || outcome == "-");
        let before = doc["entanglement"]["before"].as_f64().unwrap();
        let after = doc["entanglement"]["after"].as_f64().unwrap();
        assert!((before - after).abs() < 1e-9);
    }
}

#[test]
fn swap_accepts_a_zero_padded_triple() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "sw3.json", r#"{"kind":"swap","c":[0.6,0.8,0]}"#);
    let out = bin()
        .args(["swap", "--config"])
        .arg(&cfg)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_text(&out));
    let doc = stdout_json(&out);
    let amp01 = doc["final_state"]["01"][0].as_f64().unwrap();
    assert!((amp01.abs() - 0.6).abs() < 1e-9);

    let bad = write_cfg(&dir, "sw3b.json", r#"{"kind":"swap","c":[0.6,0.6,0.52915026]}"#);
    let out = bin().args(["swap", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_text(&out));
    assert!(stderr_text(&out).contains("third"));
}

#[test]
fn recognize_classifies_presets() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        &dir,
        "rec.json",
        r#"{"kind":"recognize","ligands":["B","C","D"]}"#,
    );
    let out = bin()
        .args(["recognize", "--config"])
        .arg(&cfg)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_text(&out));
    let doc = stdout_json(&out);
    let ligands = doc["ligands"].as_array().unwrap();
    assert_eq!(ligands.len(), 3);

    assert_eq!(ligands[0]["verdict"], "agonist");
    assert_eq!(ligands[0]["conformations"][0], 2);
    assert_eq!(ligands[1]["verdict"], "agonist");
    assert_eq!(ligands[1]["conformations"][0], 3);
    assert_eq!(ligands[2]["verdict"], "antagonist");
    assert!(ligands[2]["conformations"].is_null());
    let residual = ligands[2]["coherence_residual"].as_f64().unwrap();
    assert!((residual - 1.0 / 9.0).abs() < 1e-9);
    let w2 = ligands[2]["distribution"]["chi2"].as_f64().unwrap();
    assert!((w2 - 8.0 / 9.0).abs() < 1e-9);
}

#[test]
fn slightly_off_normalization_warns_and_repairs() {
    let dir = tempfile::tempdir().unwrap();
    let r3 = 3f64.sqrt().recip();
    let cfg = write_cfg(
        &dir,
        "hb.json",
        &format!(r#"{{"kind":"hbond","c":[{},{r3},{r3}]}}"#, r3 + 1e-8),
    );
    let out = bin().args(["bond", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_text(&out));
    assert!(
        stderr_text(&out).contains("renormalizing"),
        "missing warning: {}",
        stderr_text(&out)
    );
}

#[test]
fn badly_normalized_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "hb.json", r#"{"kind":"hbond","c":[0.5,0.5,0.5]}"#);
    let out = bin().args(["bond", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_text(&out));
    assert!(stderr_text(&out).contains("not normalized"));
}

#[test]
fn unknown_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "cap.json", r#"{"kind":"capacity","n":3,"bogus":1}"#);
    let out = bin().args(["capacity", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr_text(&out));
}

#[test]
fn kind_subcommand_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "th.json", r#"{"kind":"thermal","weights":[0.7,0.2,0.1]}"#);
    let out = bin().args(["capacity", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_text(&out).contains("does not fit"));

    let out = bin().args(["bond", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_file_is_exit_2() {
    let out = bin()
        .args(["thermal", "--config", "/nonexistent/nowhere.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_domain_bond_count_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "cap.json", r#"{"kind":"capacity","n":25}"#);
    let out = bin().args(["capacity", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr_text(&out));
}

#[test]
fn out_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(&dir, "cap.json", r#"{"kind":"capacity","n":2}"#);
    let out_path = dir.path().join("doc.json");
    let out = bin()
        .args(["capacity", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_path)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let file = std::fs::read(&out_path).unwrap();
    assert_eq!(file, out.stdout, "file and stdout disagree");
    let doc: Value = serde_json::from_slice(&file).unwrap();
    assert_eq!(doc["capacity"], 8);
}

#[test]
fn bond_accepts_both_bond_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let cov = write_cfg(
        &dir,
        "cov.json",
        &format!(r#"{{"kind":"covalent","alpha":{s},"beta":0.5,"gamma":0.5}}"#),
    );
    let out = bin()
        .args(["bond", "--config"])
        .arg(&cov)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_text(&out));
    let doc = stdout_json(&out);
    assert_eq!(doc["electron_pair"]["entanglement"].as_f64().unwrap(), 0.0);

    let hb = write_cfg(&dir, "hb.json", r#"{"kind":"hbond","c":[0.6,0.8,0.0]}"#);
    let out = bin()
        .args(["bond", "--config"])
        .arg(&hb)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert!(doc["entanglement"].as_f64().unwrap() > 0.9);
}

#[test]
fn reproduce_paper_passes_every_claim() {
    let out = bin()
        .args(["reproduce-paper", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_text(&out));
    let doc = stdout_json(&out);
    assert_eq!(doc["failed"], 0);
    let claims = doc["claims"].as_array().unwrap();
    assert!(claims.len() >= 40, "only {} claims", claims.len());

    let ids: std::collections::HashSet<&str> = claims
        .iter()
        .map(|c| c["claim"].as_str().unwrap())
        .collect();
    assert_eq!(ids.len(), claims.len(), "claim ids repeat");
    for required in ["eof_eps1", "rho_d_zero_eof", "capacity_n2"] {
        assert!(ids.contains(required), "missing claim '{required}'");
    }
    for claim in claims {
        assert_eq!(claim["pass"], true, "failing claim: {claim}");
        let diff = claim["abs_diff"].as_f64().unwrap();
        let tol = claim["tolerance"].as_f64().unwrap();
        assert!(diff <= tol);
    }
}
