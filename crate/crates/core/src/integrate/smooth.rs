// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

use super::feedback::ReferencePoint;
use super::{chart_ok, chart_rhs, FeedbackConfig, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::{c, cayley_inverse_raw, ComplexMatrix, Isometry, Unitary};
use crate::problem::SystemModel;
use crate::pulse::{PulseMode, PulseSet, TimeGrid};

/// Open-loop result: samples plus, for every step, the chart points of the
/// three later RK4 stages. The last one is the increment `Wbar_s` with
/// `X_{s+1} = Cayley^-1(Wbar_s) X_s`.
#[derive(Clone, Debug)]
pub struct OpenLoop {
    pub trajectory: Trajectory,
    pub stages: Vec<StagePoints>,
}

pub type StagePoints = [ComplexMatrix; 3];

impl OpenLoop {
    pub fn increment(&self, s: usize) -> &ComplexMatrix {
        &self.stages[s][2]
    }
}

/// Closed-loop result: samples and the new reference pulses.
#[derive(Clone, Debug)]
pub struct ClosedLoop {
    pub trajectory: Trajectory,
    pub pulses: PulseSet,
}

fn require_smooth(sys: &SystemModel, pulses: &PulseSet, grid: &TimeGrid) -> Result<()> {
    if pulses.mode != PulseMode::Smooth {
        return Err(Error::InvalidConfig("expected smooth pulses".into()));
    }
    pulses.check(sys.m(), grid)
}

/// One RK4 step in the chart centred at the current sample. `generator`
/// receives the stage index and chart point. Returns the chart points of
/// stages two to four and the increment.
fn rk4_step(
    delta: f64,
    step: usize,
    mut generator: impl FnMut(usize, &ComplexMatrix) -> Result<ComplexMatrix>,
    n: usize,
) -> Result<(StagePoints, ComplexMatrix)> {
    let d = c(delta, 0.0);
    let w0 = ComplexMatrix::zeros(n, n);
    let k1 = chart_rhs(&w0, &generator(0, &w0)?) * d;
    let w2 = &k1 * c(0.5, 0.0);
    let k2 = chart_rhs(&w2, &generator(1, &w2)?) * d;
    let w3 = &k2 * c(0.5, 0.0);
    let k3 = chart_rhs(&w3, &generator(2, &w3)?) * d;
    let k4 = chart_rhs(&k3, &generator(3, &k3)?) * d;
    let w = (k1 + (&k2 + &k3) * c(2.0, 0.0) + k4) * c(1.0 / 6.0, 0.0);
    if !chart_ok(&w) || !chart_ok(&k3) {
        return Err(Error::CayleyBlowup { step });
    }
    Ok(([w2, w3, k3], w))
}

fn chart_to_group(w: &ComplexMatrix, step: usize) -> Result<ComplexMatrix> {
    cayley_inverse_raw(w).ok_or(Error::CayleyBlowup { step })
}

const STAGE_FRACTION: [f64; 4] = [0.0, 0.5, 0.5, 1.0];

/// Open-loop propagation of smooth pulses, linearly interpolated inside
/// each step.
pub fn propagate_smooth_open(sys: &SystemModel, pulses: &PulseSet, grid: &TimeGrid, x0: &Unitary) -> Result<OpenLoop> {
    require_smooth(sys, pulses, grid)?;
    let n = sys.n();
    let mut u = vec![0.0; sys.m()];
    let mut samples = Vec::with_capacity(grid.n_sim + 1);
    let mut stages = Vec::with_capacity(grid.n_sim);
    samples.push(x0.clone());
    for s in 0..grid.n_sim {
        // stages 1 and 2 share the midpoint generator
        let mut mid: Option<ComplexMatrix> = None;
        let (points, w) = rk4_step(
            grid.delta(),
            s,
            |stage, _| {
                if stage == 2 {
                    if let Some(g) = &mid {
                        return Ok(g.clone());
                    }
                }
                pulses.interpolate(s, STAGE_FRACTION[stage], &mut u);
                let g = sys.generator(&u);
                if stage == 1 {
                    mid = Some(g.clone());
                }
                Ok(g)
            },
            n,
        )?;
        let step = chart_to_group(&w, s)?;
        let next = Unitary::new_unchecked(step * samples[s].matrix());
        samples.push(next);
        stages.push(points);
    }
    Ok(OpenLoop { trajectory: Trajectory { samples }, stages })
}

/// Closed-loop propagation from `X(0) = I` tracking `reference`. Inside a
/// step, stage `j` is compared with the reference carried to the chart
/// point of the same stage of the open-loop pass, `stages[s][j]`, so a
/// zero tracking error is reproduced exactly. Returns the trajectory and
/// the new reference pulses sampled at every grid point.
pub fn propagate_smooth_closed(
    sys: &SystemModel,
    e: &Isometry,
    reference: &Trajectory,
    stages: &[StagePoints],
    ref_pulses: &PulseSet,
    grid: &TimeGrid,
    feedback: &FeedbackConfig,
) -> Result<ClosedLoop> {
    require_smooth(sys, ref_pulses, grid)?;
    if reference.len() != grid.n_sim + 1 || stages.len() != grid.n_sim {
        return Err(Error::DimensionMismatch("reference does not match the grid".into()));
    }
    let n = sys.n();
    let m = sys.m();
    let delta = grid.delta();
    let mut out = ref_pulses.clone();
    let mut samples = Vec::with_capacity(grid.n_sim + 1);
    samples.push(Unitary::identity(n));

    let mut ubar = vec![0.0; m];
    let mut corr = vec![0.0; m];
    let mut applied = vec![0.0; m];

    let mut control =
        |s: usize, frac: f64, point: &ReferencePoint, x: &ComplexMatrix, applied: &mut [f64]| -> Result<()> {
            ref_pulses.interpolate(s, frac, &mut ubar);
            feedback.corrections(sys, e, point, x, &mut corr).map_err(|_| Error::CayleyBlowup { step: s })?;
            let t = if frac == 1.0 { grid.t(s + 1) } else { grid.t(s) + frac * delta };
            let w = feedback.shaping.window_at(t, grid.t_final);
            feedback.shape(&ubar, &corr, w, applied)
        };

    let mut start = feedback.prepare(sys, e, reference.samples[0].matrix());
    let mut u = vec![0.0; m];
    for s in 0..grid.n_sim {
        let xs = samples[s].matrix().clone();
        let xbar = reference.samples[s].matrix();
        let mut points = Vec::with_capacity(3);
        for w in &stages[s] {
            points.push(feedback.prepare(sys, e, &(chart_to_group(w, s)? * xbar)));
        }
        let end = feedback.prepare(sys, e, reference.samples[s + 1].matrix());

        control(s, 0.0, &start, &xs, &mut applied)?;
        for k in 0..m {
            out.values[k][s] = applied[k];
        }
        let first = sys.generator(&applied);

        let (_, w) = rk4_step(
            delta,
            s,
            |stage, w| {
                if stage == 0 {
                    return Ok(first.clone());
                }
                let x = chart_to_group(w, s)? * &xs;
                let point = &points[stage - 1];
                control(s, STAGE_FRACTION[stage], point, &x, &mut u)?;
                Ok(sys.generator(&u))
            },
            n,
        )?;
        let next = Unitary::new_unchecked(chart_to_group(&w, s)? * &xs);
        if s + 1 == grid.n_sim {
            control(s, 1.0, &end, next.matrix(), &mut applied)?;
            for k in 0..m {
                out.values[k][s + 1] = applied[k];
            }
        }
        samples.push(next);
        start = end;
    }
    Ok(ClosedLoop { trajectory: Trajectory { samples }, pulses: out })
}
