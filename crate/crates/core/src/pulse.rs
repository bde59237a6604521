// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Uniform time grids and sampled control pulses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `t_s = s * delta` for `s = 0..=n_sim`, `delta = t_final / n_sim`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_final: f64,
    pub n_sim: usize,
}

impl TimeGrid {
    pub fn new(t_final: f64, n_sim: usize) -> Result<Self> {
        if n_sim == 0 || !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "time grid needs t_final > 0 and n_sim >= 1 (got {t_final}, {n_sim})"
            )));
        }
        Ok(Self { t_final, n_sim })
    }

    pub fn delta(&self) -> f64 {
        self.t_final / self.n_sim as f64
    }

    pub fn t(&self, s: usize) -> f64 {
        if s == self.n_sim {
            self.t_final
        } else {
            s as f64 * self.delta()
        }
    }

    /// The same horizon with `factor` times as many steps.
    pub fn refined(&self, factor: usize) -> Self {
        Self { t_final: self.t_final, n_sim: self.n_sim * factor }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseMode {
    /// `n_sim + 1` samples, linearly interpolated in between.
    Smooth,
    /// `n_sim` constant values; sample `s` acts on `[t_s, t_{s+1})`.
    Piecewise,
}

impl PulseMode {
    pub fn samples(self, grid: &TimeGrid) -> usize {
        match self {
            PulseMode::Smooth => grid.n_sim + 1,
            PulseMode::Piecewise => grid.n_sim,
        }
    }
}

/// Control values indexed `values[channel][sample]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseSet {
    pub mode: PulseMode,
    pub values: Vec<Vec<f64>>,
}

impl PulseSet {
    pub fn zeros(mode: PulseMode, m: usize, grid: &TimeGrid) -> Self {
        Self { mode, values: vec![vec![0.0; mode.samples(grid)]; m] }
    }

    pub fn channels(&self) -> usize {
        self.values.len()
    }

    pub fn len(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks channel count, sample count and finiteness.
    pub fn check(&self, m: usize, grid: &TimeGrid) -> Result<()> {
        let want = self.mode.samples(grid);
        if self.values.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "pulse set has {} channels, system has {m}",
                self.values.len()
            )));
        }
        if let Some(k) = self.values.iter().position(|ch| ch.len() != want) {
            return Err(Error::DimensionMismatch(format!(
                "channel {} has {} samples, grid needs {want}",
                k + 1,
                self.values[k].len()
            )));
        }
        if self.values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    /// All channels at sample `s`.
    pub fn column(&self, s: usize) -> Vec<f64> {
        self.values.iter().map(|ch| ch[s]).collect()
    }

    /// Linear interpolation between samples `s` and `s + 1` at fraction
    /// `frac` of the step (smooth mode).
    pub fn interpolate(&self, s: usize, frac: f64, out: &mut [f64]) {
        for (o, ch) in out.iter_mut().zip(&self.values) {
            *o = if frac == 0.0 {
                ch[s]
            } else if frac == 1.0 {
                ch[s + 1]
            } else {
                (1.0 - frac) * ch[s] + frac * ch[s + 1]
            };
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Resamples a smooth pulse on a grid `factor` times finer, using the
    /// linear interpolant.
    pub fn refine_smooth(&self, factor: usize) -> Self {
        assert_eq!(self.mode, PulseMode::Smooth);
        let n = self.len() - 1;
        let values = self
            .values
            .iter()
            .map(|ch| {
                let mut out = Vec::with_capacity(n * factor + 1);
                for s in 0..n {
                    for j in 0..factor {
                        let f = j as f64 / factor as f64;
                        out.push((1.0 - f) * ch[s] + f * ch[s + 1]);
                    }
                }
                out.push(ch[n]);
                out
            })
            .collect();
        Self { mode: PulseMode::Smooth, values }
    }

    /// Piecewise-constant pulse with `factor` pieces per step, sampling the
    /// linear interpolant of a smooth pulse at the left edge of each piece.
    pub fn sample_piecewise(&self, factor: usize) -> Self {
        assert_eq!(self.mode, PulseMode::Smooth);
        let mut refined = self.refine_smooth(factor);
        for ch in &mut refined.values {
            ch.pop();
        }
        refined.mode = PulseMode::Piecewise;
        refined
    }
}
