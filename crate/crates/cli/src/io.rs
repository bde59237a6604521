// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV and JSON artifacts. Every file is written to a temporary file in the
//! target directory and renamed into place.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use riga_core::spectrum::Spectrum;
use riga_core::{PulseMode, PulseSet, StepRecord, TimeGrid};

/// Writes `bytes` to `path` through a sibling temporary file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(())
}

/// 17 significant digits, enough to recover every `f64` exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_bytes(header: Vec<String>, rows: impl Iterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

fn channel_header(first: &str, m: usize) -> Vec<String> {
    std::iter::once(first.to_string()).chain((1..=m).map(|k| format!("u_{k}"))).collect()
}

/// `t,u_1,...,u_m`, one row per sample; piecewise rows carry the left edge
/// of their interval.
pub fn pulses_csv(pulses: &PulseSet, grid: &TimeGrid) -> Result<Vec<u8>> {
    let rows = (0..pulses.len())
        .map(|s| std::iter::once(fmt_f64(grid.t(s))).chain(pulses.values.iter().map(|ch| fmt_f64(ch[s]))).collect());
    csv_bytes(channel_header("t", pulses.channels()), rows)
}

/// Parses a pulse file against `grid`; the sample count fixes the mode.
pub fn parse_pulses_csv(text: &str, grid: &TimeGrid) -> Result<PulseSet> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    let m = header.len().saturating_sub(1);
    if header.get(0) != Some("t") || m == 0 || (1..=m).any(|k| header.get(k) != Some(&format!("u_{k}")[..])) {
        bail!("pulse file header must be t,u_1,...,u_m");
    }
    let mut values = vec![Vec::new(); m];
    let mut times = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let num = |k: usize| -> Result<f64> {
            let field = rec.get(k).with_context(|| format!("line {line}: missing column {}", k + 1))?;
            field.trim().parse::<f64>().with_context(|| format!("line {line}: bad number {field:?}"))
        };
        times.push(num(0)?);
        for (k, ch) in values.iter_mut().enumerate() {
            ch.push(num(k + 1)?);
        }
    }
    let mode = match times.len() {
        n if n == grid.n_sim + 1 => PulseMode::Smooth,
        n if n == grid.n_sim => PulseMode::Piecewise,
        n => bail!("pulse file has {n} rows; the grid needs {} (smooth) or {} (piecewise)", grid.n_sim + 1, grid.n_sim),
    };
    let tol = 1e-9 * grid.t_final.max(1.0);
    if let Some(s) = times.iter().enumerate().position(|(s, t)| (t - grid.t(s)).abs() > tol) {
        bail!("pulse file time {} on data row {} does not match the grid ({})", times[s], s + 1, grid.t(s));
    }
    Ok(PulseSet { mode, values })
}

pub fn convergence_csv(records: &[StepRecord]) -> Result<Vec<u8>> {
    let header = ["step", "infidelity", "lyapunov", "goal_index", "max_pulse", "wall_ms"].map(String::from).to_vec();
    let rows = records.iter().map(|r| {
        vec![
            r.step.to_string(),
            fmt_f64(r.infidelity),
            r.lyapunov.map(fmt_f64).unwrap_or_default(),
            r.goal_index.to_string(),
            fmt_f64(r.max_pulse),
            format!("{:.3}", r.wall_ms),
        ]
    });
    csv_bytes(header, rows)
}

/// `frequency,u_1,...,u_m,average`.
pub fn spectra_csv(spec: &Spectrum) -> Result<Vec<u8>> {
    let mut header = channel_header("frequency", spec.magnitudes.len());
    header.push("average".into());
    let rows = spec.frequencies.iter().enumerate().map(|(k, f)| {
        std::iter::once(fmt_f64(*f))
            .chain(spec.magnitudes.iter().map(|m| fmt_f64(m[k])))
            .chain(std::iter::once(fmt_f64(spec.average[k])))
            .collect()
    });
    csv_bytes(header, rows)
}
