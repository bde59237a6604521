// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Random trigonometric seed inputs.
//!
//! Channel `k` is `W(t) * sum_l [a_kl sin(2 l pi t / T) + b_kl cos(2 l pi t / T)]`
//! with coefficients drawn uniformly from `[-A, A]`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::window_hamming;
use crate::pulse::{PulseMode, PulseSet, TimeGrid};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedConfig {
    /// Number of harmonics `M`.
    pub harmonics: usize,
    /// Base period `T`.
    pub period: f64,
    /// Coefficient bound `A`.
    pub amplitude: f64,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default)]
    pub apply_window: bool,
}

impl SeedConfig {
    pub fn validate(&self) -> Result<()> {
        if self.harmonics == 0 {
            return Err(Error::InvalidConfig("seed needs at least one harmonic".into()));
        }
        if !(self.period > 0.0 && self.period.is_finite()) {
            return Err(Error::InvalidConfig("seed period must be positive".into()));
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return Err(Error::InvalidConfig("seed amplitude must be non-negative".into()));
        }
        Ok(())
    }
}

/// Sine (`a`) and cosine (`b`) coefficients, each `m x M`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedCoefficients {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
}

impl SeedCoefficients {
    /// Draws `m x M` coefficients, sine block first then cosine block, each
    /// row-major.
    pub fn draw(cfg: &SeedConfig, m: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
        let amp = cfg.amplitude;
        let block = |rng: &mut ChaCha8Rng| -> Vec<Vec<f64>> {
            (0..m).map(|_| (0..cfg.harmonics).map(|_| amp * (2.0 * rng.random::<f64>() - 1.0)).collect()).collect()
        };
        let a = block(&mut rng);
        let b = block(&mut rng);
        Self { a, b }
    }

    pub fn channels(&self) -> usize {
        self.a.len()
    }

    pub fn harmonics(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    pub fn check(&self, m: usize) -> Result<()> {
        let mm = self.harmonics();
        let ok =
            self.a.len() == m && self.b.len() == m && mm > 0 && self.a.iter().chain(&self.b).all(|row| row.len() == mm);
        if !ok {
            return Err(Error::DimensionMismatch(format!("seed coefficients must be two {m} x M arrays with M >= 1")));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("seed coefficients: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain numeric arrays serialize")
    }

    /// Evaluates the trigonometric sum on the grid.
    pub fn evaluate(&self, period: f64, apply_window: bool, grid: &TimeGrid, mode: PulseMode) -> PulseSet {
        let samples = mode.samples(grid);
        let values = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| {
                (0..samples)
                    .map(|s| {
                        let t = grid.t(s);
                        let mut v = 0.0;
                        for (l, (al, bl)) in a.iter().zip(b).enumerate() {
                            let arg = 2.0 * (l + 1) as f64 * PI * t / period;
                            v += al * arg.sin() + bl * arg.cos();
                        }
                        if apply_window {
                            v *= window_hamming(t, grid.t_final);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        PulseSet { mode, values }
    }
}

/// Seed pulses for `m` channels from freshly drawn coefficients.
pub fn generate_seed(cfg: &SeedConfig, m: usize, grid: &TimeGrid, mode: PulseMode) -> Result<PulseSet> {
    cfg.validate()?;
    Ok(SeedCoefficients::draw(cfg, m).evaluate(cfg.period, cfg.apply_window, grid, mode))
}

/// Rejects pulses with a sample outside `[-u_max, u_max]`.
pub fn check_seed_bounds(pulses: &PulseSet, u_max: f64) -> Result<()> {
    for (k, ch) in pulses.values.iter().enumerate() {
        if let Some(&v) = ch.iter().find(|v| !(v.abs() <= u_max)) {
            return Err(Error::SeedOutOfBounds { channel: k + 1, value: v, u_max });
        }
    }
    Ok(())
}
