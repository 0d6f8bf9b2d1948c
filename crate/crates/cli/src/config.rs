//! JSON scenario configurations.
//!
//! Amplitude groups must arrive normalized: a squared-norm deviation above
//! 1e-6 rejects the configuration, one above 1e-9 is silently repaired up
//! to a stderr warning, anything smaller passes through untouched. Thermal
//! weights follow the same rule on their sum.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

/// Deviation that rejects a configuration outright.
pub const GROUP_REJECT: f64 = 1e-6;
/// Deviation below which amplitudes are taken as given.
pub const GROUP_SILENT: f64 = 1e-9;

/// One amplitude: a bare real or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum CNum {
    Real(f64),
    Pair([f64; 2]),
}

impl CNum {
    fn to_complex(self) -> Complex64 {
        match self {
            CNum::Real(re) => Complex64::new(re, 0.0),
            CNum::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Proton,
    Electron,
}

/// Two-electron covalent bond amplitudes.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovalentCfg {
    pub alpha: CNum,
    pub beta: CNum,
    pub gamma: CNum,
    /// Electron split (a, b) of the covalent term; even split by default.
    pub split: Option<[CNum; 2]>,
}

/// Unified hydrogen-bond amplitude triple.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HbondCfg {
    /// Which particle tunnels; protons by default.
    pub mode: Option<Mode>,
    pub c: [CNum; 3],
}

/// Statistical mixture over tunneling eigenstates.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalCfg {
    pub weights: Vec<f64>,
    /// Amplitude triples of the mixed eigenstates; the delocalized
    /// tunneling triple by default (three weights).
    pub levels: Option<Vec<[CNum; 3]>>,
}

/// Intermolecular pair handed over through the bridge.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwapCfg {
    /// Coefficients of c1|10> + c2|01> on the (xn, x1) pair; a third entry
    /// is accepted for uniformity with the bond triples but must be zero.
    pub c: Vec<CNum>,
    /// Initial acceptor qubit; the resting bridge state by default.
    pub bridge: Option<[CNum; 2]>,
}

/// One docked ligand: a preset name or an explicit amplitude triple.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum LigandSpec {
    Preset(String),
    Custom { name: String, c: [CNum; 3] },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecognizeCfg {
    pub ligands: Vec<LigandSpec>,
    /// Sharpness threshold for a definite conformational response.
    pub tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityCfg {
    /// Number of receptor bonds.
    pub n: u32,
    /// Optional ligand count to invert into a bond budget.
    pub ligands: Option<u64>,
}

#[derive(Debug)]
pub enum Scenario {
    Covalent(CovalentCfg),
    Hbond(HbondCfg),
    Thermal(ThermalCfg),
    Swap(SwapCfg),
    Recognize(RecognizeCfg),
    Capacity(CapacityCfg),
}

impl Scenario {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Scenario::Covalent(_) => "covalent",
            Scenario::Hbond(_) => "hbond",
            Scenario::Thermal(_) => "thermal",
            Scenario::Swap(_) => "swap",
            Scenario::Recognize(_) => "recognize",
            Scenario::Capacity(_) => "capacity",
        }
    }
}

pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub seed: Option<u64>,
    pub output_path: Option<PathBuf>,
}

pub fn load(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<ScenarioConfig, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid JSON: {e}")))?;
    let Value::Object(mut map) = value else {
        return Err(CliError::Config("top level must be a JSON object".into()));
    };
    let kind = match map.remove("kind") {
        Some(Value::String(s)) => s,
        Some(_) => return Err(CliError::Config("'kind' must be a string".into())),
        None => return Err(CliError::Config("missing 'kind'".into())),
    };
    let seed = match map.remove("seed") {
        None => None,
        Some(v) => Some(v.as_u64().ok_or_else(|| {
            CliError::Config("'seed' must be a non-negative integer".into())
        })?),
    };
    let output_path = match map.remove("output_path") {
        None => None,
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(_) => return Err(CliError::Config("'output_path' must be a string".into())),
    };
    let rest = Value::Object(map);
    let scenario = match kind.as_str() {
        "covalent" => Scenario::Covalent(from_rest(rest)?),
        "hbond" => Scenario::Hbond(from_rest(rest)?),
        "thermal" => Scenario::Thermal(from_rest(rest)?),
        "swap" => Scenario::Swap(from_rest(rest)?),
        "recognize" => Scenario::Recognize(from_rest(rest)?),
        "capacity" => Scenario::Capacity(from_rest(rest)?),
        other => return Err(CliError::Config(format!("unknown kind '{other}'"))),
    };
    Ok(ScenarioConfig { scenario, seed, output_path })
}

fn from_rest<T: serde::de::DeserializeOwned>(rest: Value) -> Result<T, CliError> {
    serde_json::from_value(rest).map_err(|e| CliError::Config(e.to_string()))
}

/// Converts one amplitude group, applying the normalization contract.
pub fn group(label: &str, raw: &[CNum]) -> Result<Vec<Complex64>, CliError> {
    let mut amps: Vec<Complex64> = raw.iter().map(|c| c.to_complex()).collect();
    let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let deviation = (norm_sqr - 1.0).abs();
    if deviation > GROUP_REJECT {
        return Err(CliError::Config(format!(
            "amplitude group '{label}' is not normalized: \
             |sum of squares - 1| = {deviation:.3e} exceeds {GROUP_REJECT:.0e}"
        )));
    }
    if deviation > GROUP_SILENT {
        eprintln!("warning: renormalizing amplitude group '{label}' (deviation {deviation:.3e})");
        let norm = norm_sqr.sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
    }
    Ok(amps)
}

/// Same contract for probability weights, normalized by their sum.
pub fn weights(label: &str, w: &mut [f64]) -> Result<(), CliError> {
    for (k, x) in w.iter().enumerate() {
        if *x < 0.0 {
            return Err(CliError::Config(format!("weight {k} of '{label}' is negative")));
        }
    }
    let sum: f64 = w.iter().sum();
    let deviation = (sum - 1.0).abs();
    if deviation > GROUP_REJECT {
        return Err(CliError::Config(format!(
            "weights '{label}' do not sum to one: |sum - 1| = {deviation:.3e} \
             exceeds {GROUP_REJECT:.0e}"
        )));
    }
    if deviation > GROUP_SILENT {
        eprintln!("warning: renormalizing weights '{label}' (deviation {deviation:.3e})");
        for x in w.iter_mut() {
            *x /= sum;
        }
    }
    Ok(())
}
