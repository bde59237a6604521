// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration file: a single JSON document naming the system, the
//! gate, the synthesis settings and the outputs.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use riga_core::models::{
    build_cavity_transmon, build_qubit_chain, build_transmon_pair, cavity_config, chain_config, transmon_config,
    CavityTransmonParams, QubitChainParams, TransmonPairParams,
};
use riga_core::{ComplexMatrix, GateSpec, Isometry, RigaConfig, SystemModel, Unitary, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Complex matrix as rows of `[re, im]` pairs.
pub type MatrixText = Vec<Vec<[f64; 2]>>;

pub fn matrix_from_text(rows: &MatrixText, what: &str) -> Result<ComplexMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if n == 0 || m == 0 {
        bail!("{what}: matrix is empty");
    }
    if let Some(i) = rows.iter().position(|r| r.len() != m) {
        bail!("{what}: row {} has {} entries, expected {m}", i + 1, rows[i].len());
    }
    Ok(ComplexMatrix::from_fn(n, m, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemSection {
    QubitChain(QubitChainParams),
    TransmonPair(TransmonPairParams),
    CavityTransmon(CavityTransmonParams),
    /// Hamiltonians `H_0, H_1, ...`; generators are `-i H`.
    Explicit {
        drift: MatrixText,
        controls: Vec<MatrixText>,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSection {
    /// `cnot`, `state_prep` or `hadamard`, depending on the system.
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default)]
    pub e: Option<MatrixText>,
    #[serde(default)]
    pub f: Option<MatrixText>,
    #[serde(default)]
    pub goal: Option<MatrixText>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub dir: Option<PathBuf>,
    #[serde(default = "yes")]
    pub pulses: bool,
    #[serde(default = "yes")]
    pub convergence: bool,
    #[serde(default = "yes")]
    pub spectra: bool,
    #[serde(default = "yes")]
    pub report: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: None, pulses: true, convergence: true, spectra: true, report: true }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub system: SystemSection,
    #[serde(default)]
    pub gate: GateSection,
    /// Synthesis settings. For builtin systems the keys given here override
    /// the published settings of that system.
    #[serde(default)]
    pub riga: Option<Value>,
    #[serde(default)]
    pub outputs: OutputSection,
}

/// Everything a command needs, built and cross-checked.
pub struct Resolved {
    pub file: RunConfigFile,
    pub system: SystemModel,
    pub spec: GateSpec,
    pub riga: RigaConfig,
    /// Forbidden-level isometry for builtin oscillator models.
    pub forbidden: Option<Isometry>,
}

pub fn load(path: &Path) -> Result<RunConfigFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    parse(&text).with_context(|| format!("invalid config {}", path.display()))
}

pub fn parse(text: &str) -> Result<RunConfigFile> {
    serde_json::from_str(text).map_err(|e| anyhow!("{e}"))
}

/// Shallow-merges `overrides` into the serialized `base`; nested objects
/// are merged key by key.
fn merge(base: &mut Value, overrides: &Value) {
    match (base, overrides) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(k) {
                    Some(slot) if slot.is_object() && v.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (b, o) => *b = o.clone(),
    }
}

fn riga_settings(base: Option<RigaConfig>, section: &Option<Value>) -> Result<RigaConfig> {
    let value = match (base, section) {
        (Some(b), Some(o)) => {
            let mut v = serde_json::to_value(b)?;
            merge(&mut v, o);
            v
        }
        (Some(b), None) => serde_json::to_value(b)?,
        (None, Some(o)) => o.clone(),
        (None, None) => bail!("explicit systems need a \"riga\" section"),
    };
    serde_json::from_value(value).map_err(|e| anyhow!("riga: {e}"))
}

fn target_name(gate: &GateSection, default: &str) -> String {
    gate.target.clone().unwrap_or_else(|| default.to_string())
}

pub fn resolve(file: RunConfigFile) -> Result<Resolved> {
    let seed_hint = file.riga.as_ref().and_then(|v| v.pointer("/seed/rng_seed")).and_then(Value::as_u64).unwrap_or(0);
    let (system, spec, base, forbidden) = match &file.system {
        SystemSection::QubitChain(p) => {
            let (sys, spec) = build_qubit_chain(p)?;
            let target = target_name(&file.gate, "hadamard");
            if target != "hadamard" {
                bail!("gate: the qubit chain only provides \"hadamard\", got \"{target}\"");
            }
            (sys, spec, chain_config(p.qubits, seed_hint).ok(), None)
        }
        SystemSection::TransmonPair(p) => {
            let tp = build_transmon_pair(p)?;
            let spec = match target_name(&file.gate, "cnot").as_str() {
                "cnot" => tp.cnot,
                "state_prep" => tp.state_prep,
                other => bail!("gate: the transmon pair provides \"cnot\" and \"state_prep\", got \"{other}\""),
            };
            (tp.system, spec, Some(transmon_config(p, seed_hint)), Some(tp.forbidden))
        }
        SystemSection::CavityTransmon(p) => {
            let ct = build_cavity_transmon(p)?;
            let target = target_name(&file.gate, "hadamard");
            if target != "hadamard" {
                bail!("gate: the cavity system only provides \"hadamard\", got \"{target}\"");
            }
            (ct.system, ct.hadamard, Some(cavity_config(seed_hint)), Some(ct.forbidden))
        }
        SystemSection::Explicit { drift, controls } => {
            let h0 = matrix_from_text(drift, "system.drift")?;
            let hk = controls
                .iter()
                .enumerate()
                .map(|(k, m)| matrix_from_text(m, &format!("system.controls[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            let sys = SystemModel::from_hamiltonians(&h0, &hk).context("system")?;
            (sys, explicit_gate(&file.gate)?, None, None)
        }
    };
    if spec.n() != system.n() {
        bail!("gate acts on {} levels but the system has {}", spec.n(), system.n());
    }
    let riga = riga_settings(base, &file.riga)?;
    riga.validate().context("riga")?;
    Ok(Resolved { file, system, spec, riga, forbidden })
}

fn explicit_gate(gate: &GateSection) -> Result<GateSpec> {
    let (Some(e), Some(f)) = (&gate.e, &gate.f) else {
        bail!("gate: explicit systems need both \"e\" and \"f\"");
    };
    let e = Isometry::new(matrix_from_text(e, "gate.e")?).context("gate.e")?;
    let f = Isometry::new(matrix_from_text(f, "gate.f")?).context("gate.f")?;
    match &gate.goal {
        Some(g) => {
            let goal = Unitary::new(matrix_from_text(g, "gate.goal")?).context("gate.goal")?;
            Ok(GateSpec::with_goal(e, f, goal)?)
        }
        None => Ok(GateSpec::new(e, f)?),
    }
}
