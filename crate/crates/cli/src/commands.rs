// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use riga_core::driver::{resimulate, run_grape, run_riga, RunReport};
use riga_core::integrate::{halfstep_infidelity, propagate_pc_forward, propagate_smooth_open, Trajectory};
use riga_core::models::{
    build_cavity_transmon, build_transmon_pair, forbidden_population, good_population, CavityTransmonParams,
    TransmonPairParams,
};
use riga_core::problem::infidelity;
use riga_core::spectrum::{nyquist_margin, pulse_spectrum, NyquistReport};
use riga_core::{PulseMode, PulseSet, RigaConfig, SystemModel, Termination, TimeGrid, Unitary, Variant};
use serde::Serialize;

use crate::config::{load, resolve, Resolved, SystemSection};
use crate::io::{convergence_csv, fmt_f64, parse_pulses_csv, pulses_csv, spectra_csv, write_atomic};

/// Flags shared by every command.
#[derive(Clone, Debug, Default)]
pub struct Common {
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub max_steps: Option<usize>,
    pub quiet: bool,
    pub threads: usize,
}

const REPORT_SCHEMA_VERSION: u32 = 1;
const NYQUIST_FRACTION: f64 = 0.5;

#[derive(Serialize)]
struct Populations {
    good: f64,
    forbidden: Option<f64>,
}

#[derive(Serialize)]
struct Report<'a> {
    schema_version: u32,
    command: &'a str,
    system: &'a str,
    levels: usize,
    channels: usize,
    encoded: usize,
    termination: &'a Termination,
    converged: bool,
    final_infidelity: f64,
    steps: usize,
    wall_ms: f64,
    final_unitarity_defect: f64,
    final_populations: Populations,
    nyquist: NyquistReport,
    threads: usize,
    config: &'a RigaConfig,
}

fn system_kind(s: &SystemSection) -> &'static str {
    match s {
        SystemSection::QubitChain(_) => "qubit_chain",
        SystemSection::TransmonPair(_) => "transmon_pair",
        SystemSection::CavityTransmon(_) => "cavity_transmon",
        SystemSection::Explicit { .. } => "explicit",
    }
}

fn prepare(common: &Common) -> Result<Resolved> {
    let mut r = resolve(load(&common.config)?).with_context(|| format!("config {}", common.config.display()))?;
    if let Some(seed) = common.seed {
        r.riga.seed.rng_seed = seed;
    }
    if let Some(steps) = common.max_steps {
        r.riga.max_steps = steps;
    }
    Ok(r)
}

fn out_dir(common: &Common, r: &Resolved) -> Result<PathBuf> {
    let dir = common.out.clone().or_else(|| r.file.outputs.dir.clone()).unwrap_or_else(|| PathBuf::from("riga-out"));
    std::fs::create_dir_all(&dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
    Ok(dir)
}

/// `run` and `grape`: returns the process exit code.
pub fn synthesize(common: &Common, grape: bool) -> Result<i32> {
    let mut r = prepare(common)?;
    if grape {
        r.riga.variant = Variant::Piecewise;
    }
    let report = if grape { run_grape(&r.system, &r.spec, &r.riga)? } else { run_riga(&r.system, &r.spec, &r.riga)? };
    let dir = out_dir(common, &r)?;
    write_run_artifacts(&dir, common, &r, &report, if grape { "grape" } else { "run" })?;
    if !common.quiet {
        println!(
            "{}: {:?} after {} steps, infidelity {:.6e}; artifacts in {}",
            if grape { "grape" } else { "run" },
            report.termination,
            report.passes,
            report.final_infidelity,
            dir.display()
        );
    }
    Ok(if report.converged() { 0 } else { 2 })
}

fn write_run_artifacts(dir: &Path, common: &Common, r: &Resolved, report: &RunReport, command: &str) -> Result<()> {
    let grid = r.riga.grid()?;
    let outputs = &r.file.outputs;
    let spectrum = pulse_spectrum(&report.pulses, &grid);
    if outputs.pulses {
        write_atomic(&dir.join("pulses.csv"), &pulses_csv(&report.pulses, &grid)?)?;
    }
    if outputs.convergence {
        write_atomic(&dir.join("convergence.csv"), &convergence_csv(&report.records)?)?;
    }
    if outputs.spectra {
        write_atomic(&dir.join("spectra.csv"), &spectra_csv(&spectrum)?)?;
    }
    if outputs.report {
        let x = &report.final_propagator;
        let doc = Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command,
            system: system_kind(&r.file.system),
            levels: r.system.n(),
            channels: r.system.m(),
            encoded: r.spec.nbar(),
            termination: &report.termination,
            converged: report.converged(),
            final_infidelity: report.final_infidelity,
            steps: report.passes,
            wall_ms: report.records.last().map_or(0.0, |rec| rec.wall_ms),
            final_unitarity_defect: x.unitarity_defect(),
            final_populations: Populations {
                good: good_population(x, &r.spec),
                forbidden: r.forbidden.as_ref().map(|f| forbidden_population(x, r.spec.e(), f)),
            },
            nyquist: nyquist_margin(&spectrum, NYQUIST_FRACTION),
            threads: common.threads,
            config: &r.riga,
        };
        let mut text = serde_json::to_vec_pretty(&doc)?;
        text.push(b'\n');
        write_atomic(&dir.join("report.json"), &text)?;
    }
    Ok(())
}

fn open_trajectory(sys: &SystemModel, pulses: &PulseSet, grid: &TimeGrid) -> Result<Trajectory> {
    let id = Unitary::identity(sys.n());
    Ok(match pulses.mode {
        PulseMode::Smooth => propagate_smooth_open(sys, pulses, grid, &id)?.trajectory,
        PulseMode::Piecewise => propagate_pc_forward(sys, pulses, grid, &id)?,
    })
}

fn doubled(pulses: &PulseSet) -> PulseSet {
    match pulses.mode {
        PulseMode::Smooth => pulses.refine_smooth(2),
        PulseMode::Piecewise => pulses.sample_piecewise(2),
    }
}

#[derive(Serialize)]
struct Resimulation {
    levels: String,
    infidelity: f64,
}

#[derive(Serialize)]
struct VerifyReport {
    schema_version: u32,
    samples: usize,
    mode: PulseMode,
    final_infidelity: f64,
    halfstep_infidelity: f64,
    halfstep_infidelity_doubled: f64,
    halfstep_ratio: f64,
    max_unitarity_defect: f64,
    max_forbidden_population: Option<f64>,
    min_good_population: f64,
    resimulation: Option<Resimulation>,
}

/// Re-simulation in a larger truncation of the builtin oscillator models.
fn resimulation(r: &Resolved, pulses: &PulseSet, grid: &TimeGrid) -> Result<Option<Resimulation>> {
    let target = r.file.gate.target.as_deref();
    match &r.file.system {
        SystemSection::TransmonPair(p) => {
            let wide = TransmonPairParams { levels: p.levels + 3, ..p.clone() };
            let tp = build_transmon_pair(&wide)?;
            let spec = if target == Some("state_prep") { tp.state_prep } else { tp.cnot };
            let inf = resimulate(&tp.system, pulses, grid, &spec)?;
            Ok(Some(Resimulation { levels: format!("{0}x{0}", wide.levels), infidelity: inf }))
        }
        SystemSection::CavityTransmon(p) => {
            let wide = CavityTransmonParams {
                cavity_levels: p.cavity_levels + 5,
                transmon_levels: p.transmon_levels + 2,
                ..p.clone()
            };
            let ct = build_cavity_transmon(&wide)?;
            let inf = resimulate(&ct.system, pulses, grid, &ct.hadamard)?;
            Ok(Some(Resimulation {
                levels: format!("{}x{}", wide.cavity_levels, wide.transmon_levels),
                infidelity: inf,
            }))
        }
        _ => Ok(None),
    }
}

pub fn verify(common: &Common, pulses_path: &Path) -> Result<i32> {
    let r = prepare(common)?;
    let grid = r.riga.grid()?;
    let text = std::fs::read_to_string(pulses_path)
        .with_context(|| format!("cannot read pulses {}", pulses_path.display()))?;
    let pulses = parse_pulses_csv(&text, &grid).with_context(|| format!("pulses {}", pulses_path.display()))?;
    pulses.check(r.system.m(), &grid)?;

    let trajectory = open_trajectory(&r.system, &pulses, &grid)?;
    let h1 = halfstep_infidelity(&r.system, &pulses, &grid)?;
    let h2 = halfstep_infidelity(&r.system, &doubled(&pulses), &grid.refined(2))?;
    let e = r.spec.e();
    let good: Vec<f64> = trajectory.samples.iter().map(|x| good_population(x, &r.spec)).collect();
    let forbidden: Option<Vec<f64>> =
        r.forbidden.as_ref().map(|f| trajectory.samples.iter().map(|x| forbidden_population(x, e, f)).collect());

    let doc = VerifyReport {
        schema_version: REPORT_SCHEMA_VERSION,
        samples: pulses.len(),
        mode: pulses.mode,
        final_infidelity: infidelity(trajectory.last(), &r.spec),
        halfstep_infidelity: h1,
        halfstep_infidelity_doubled: h2,
        halfstep_ratio: h1 / h2,
        max_unitarity_defect: trajectory.max_unitarity_defect(),
        max_forbidden_population: forbidden.as_ref().map(|v| v.iter().copied().fold(0.0, f64::max)),
        min_good_population: good.iter().copied().fold(f64::INFINITY, f64::min),
        resimulation: resimulation(&r, &pulses, &grid)?,
    };

    let dir = match &common.out {
        Some(d) => d.clone(),
        None => pulses_path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(".")),
    };
    std::fs::create_dir_all(&dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let mut header = vec!["t".to_string(), "good".to_string()];
    if forbidden.is_some() {
        header.push("forbidden".into());
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for (s, g) in good.iter().enumerate() {
        let mut row = vec![fmt_f64(grid.t(s)), fmt_f64(*g)];
        if let Some(f) = &forbidden {
            row.push(fmt_f64(f[s]));
        }
        w.write_record(&row)?;
    }
    write_atomic(&dir.join("populations.csv"), &w.into_inner().map_err(|e| e.into_error())?)?;
    let mut json = serde_json::to_vec_pretty(&doc)?;
    json.push(b'\n');
    write_atomic(&dir.join("verify.json"), &json)?;
    if !common.quiet {
        println!("{}", String::from_utf8_lossy(&json).trim_end());
    }
    Ok(0)
}
