// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{FeedbackConfig, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::{c, expm, Isometry, Unitary};
use crate::problem::SystemModel;
use crate::pulse::{PulseMode, PulseSet, TimeGrid};

fn require_piecewise(sys: &SystemModel, pulses: &PulseSet, grid: &TimeGrid) -> Result<()> {
    if pulses.mode != PulseMode::Piecewise {
        return Err(Error::InvalidConfig("expected piecewise-constant pulses".into()));
    }
    pulses.check(sys.m(), grid)
}

fn step_exponential(sys: &SystemModel, u: &[f64], dt: f64) -> Unitary {
    Unitary::new_unchecked(expm(&(sys.generator(u) * c(dt, 0.0))))
}

/// `X_s = exp(delta (S_0 + sum_k u_{k,s} S_k)) X_{s-1}`.
pub fn propagate_pc_forward(sys: &SystemModel, pulses: &PulseSet, grid: &TimeGrid, x0: &Unitary) -> Result<Trajectory> {
    require_piecewise(sys, pulses, grid)?;
    let dt = grid.delta();
    let mut samples = Vec::with_capacity(grid.n_sim + 1);
    samples.push(x0.clone());
    for s in 0..grid.n_sim {
        let step = step_exponential(sys, &pulses.column(s), dt);
        let next = &step * samples.last().unwrap();
        samples.push(next);
    }
    Ok(Trajectory { samples })
}

/// Backward sweep from the final value `X_{n_sim} = x_final`.
pub fn propagate_pc_backward(
    sys: &SystemModel,
    pulses: &PulseSet,
    grid: &TimeGrid,
    x_final: &Unitary,
) -> Result<Trajectory> {
    require_piecewise(sys, pulses, grid)?;
    let dt = grid.delta();
    let mut samples = vec![x_final.clone(); grid.n_sim + 1];
    for s in (0..grid.n_sim).rev() {
        let step = step_exponential(sys, &pulses.column(s), -dt);
        samples[s] = &step * &samples[s + 1];
    }
    Ok(Trajectory { samples })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiecewiseMode {
    /// The freshly updated value drives the step it was computed for.
    Riga,
    /// Propagation keeps the previous pulses; updates are only collected.
    GrapeLagged,
}

/// Closed-loop sweep against a reference trajectory. The correction for
/// piece `s` is evaluated at the left edge `t_s`.
pub fn propagate_pc_closed(
    sys: &SystemModel,
    e: &Isometry,
    reference: &Trajectory,
    ref_pulses: &PulseSet,
    grid: &TimeGrid,
    feedback: &FeedbackConfig,
    mode: PiecewiseMode,
) -> Result<(Trajectory, PulseSet)> {
    require_piecewise(sys, ref_pulses, grid)?;
    if reference.len() != grid.n_sim + 1 {
        return Err(Error::DimensionMismatch("reference trajectory does not match the grid".into()));
    }
    let m = sys.m();
    let dt = grid.delta();
    let mut out = ref_pulses.clone();
    let mut samples = Vec::with_capacity(grid.n_sim + 1);
    samples.push(Unitary::identity(sys.n()));
    let mut corr = vec![0.0; m];
    let mut applied = vec![0.0; m];
    for s in 0..grid.n_sim {
        let xs = samples.last().unwrap();
        let point = feedback.prepare(sys, e, reference.samples[s].matrix());
        feedback.corrections(sys, e, &point, xs.matrix(), &mut corr).map_err(|_| Error::CayleyBlowup { step: s })?;
        let ubar = ref_pulses.column(s);
        let w = feedback.shaping.window_at(grid.t(s), grid.t_final);
        feedback.shape(&ubar, &corr, w, &mut applied)?;
        for k in 0..m {
            out.values[k][s] = applied[k];
        }
        let drive = match mode {
            PiecewiseMode::Riga => &applied,
            PiecewiseMode::GrapeLagged => &ubar,
        };
        let next = &step_exponential(sys, drive, dt) * xs;
        samples.push(next);
    }
    Ok((Trajectory { samples }, out))
}
