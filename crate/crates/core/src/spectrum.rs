// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! One-sided magnitude spectra of control pulses.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::pulse::{PulseSet, TimeGrid};

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    /// Bin frequencies `k / (N delta)`, `k = 0..=N/2`.
    pub frequencies: Vec<f64>,
    /// `|DFT|` per channel on the bins above.
    pub magnitudes: Vec<Vec<f64>>,
    /// Channel average of `magnitudes`.
    pub average: Vec<f64>,
    pub nyquist: f64,
    /// Number of samples transformed.
    pub samples: usize,
}

impl Spectrum {
    /// Two-sided weight of one-sided bin `k` for a real signal.
    fn weight(&self, k: usize) -> f64 {
        if k == 0 || (self.samples.is_multiple_of(2) && k == self.samples / 2) {
            1.0
        } else {
            2.0
        }
    }

    /// `sum_k |X_k|^2` over the full two-sided spectrum of `channel`.
    pub fn energy(&self, channel: usize) -> f64 {
        self.magnitudes[channel].iter().enumerate().map(|(k, m)| self.weight(k) * m * m).sum()
    }

    /// Fraction of the total energy (all channels) in bins strictly above
    /// `cutoff`.
    pub fn energy_above(&self, cutoff: f64) -> f64 {
        let mut total = 0.0;
        let mut high = 0.0;
        for mags in &self.magnitudes {
            for (k, m) in mags.iter().enumerate() {
                let e = self.weight(k) * m * m;
                total += e;
                if self.frequencies[k] > cutoff {
                    high += e;
                }
            }
        }
        if total > 0.0 {
            high / total
        } else {
            0.0
        }
    }
}

/// Spectrum of every channel of `pulses`, sampled with the step of `grid`.
pub fn pulse_spectrum(pulses: &PulseSet, grid: &TimeGrid) -> Spectrum {
    let n = pulses.len();
    let delta = grid.delta();
    let half = n / 2;
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n.max(1));
    let magnitudes: Vec<Vec<f64>> = pulses
        .values
        .iter()
        .map(|ch| {
            let mut buf: Vec<Complex<f64>> = ch.iter().map(|&v| Complex::new(v, 0.0)).collect();
            fft.process(&mut buf);
            buf[..=half.min(n.saturating_sub(1))].iter().map(|z| z.norm()).collect()
        })
        .collect();
    let bins = magnitudes.first().map_or(0, Vec::len);
    let average = (0..bins).map(|k| magnitudes.iter().map(|m| m[k]).sum::<f64>() / magnitudes.len() as f64).collect();
    let frequencies = (0..bins).map(|k| k as f64 / (n as f64 * delta)).collect();
    Spectrum { frequencies, magnitudes, average, nyquist: 0.5 / delta, samples: n }
}

#[derive(Clone, Debug, Serialize)]
pub struct NyquistReport {
    pub flagged: bool,
    pub cutoff: f64,
    pub energy_fraction: f64,
}

/// Flags spectra with more than 1% of their energy above
/// `fraction * nyquist`.
pub fn nyquist_margin(spec: &Spectrum, fraction: f64) -> NyquistReport {
    let cutoff = fraction * spec.nyquist;
    let energy_fraction = spec.energy_above(cutoff);
    NyquistReport { flagged: energy_fraction > 0.01, cutoff, energy_fraction }
}
