// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! The iterative loop: simulate the current pulses open loop, stop when the
//! gate is reached, otherwise pick a goal, translate the trajectory onto it
//! and run one closed-loop pass whose inputs become the next pulses.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goal::{build_goal_path, optgoal, strategy_one_goal, switch_select, GoalPath, DEFAULT_THETA_MAX};
use crate::integrate::{
    propagate_pc_backward, propagate_pc_closed, propagate_pc_forward, propagate_smooth_closed, propagate_smooth_open,
    FeedbackConfig, PiecewiseMode, Trajectory,
};
use crate::linalg::Unitary;
use crate::problem::{
    infidelity, lyapunov_full, lyapunov_partial, GateSpec, LyapunovKind, SaturationKind, ShapingConfig, SystemModel,
};
use crate::pulse::{PulseMode, PulseSet, TimeGrid};
use crate::seed::{check_seed_bounds, generate_seed, SeedCoefficients, SeedConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Smooth,
    Piecewise,
}

impl Variant {
    pub fn pulse_mode(self) -> PulseMode {
        match self {
            Variant::Smooth => PulseMode::Smooth,
            Variant::Piecewise => PulseMode::Piecewise,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GoalStrategy {
    FixedGoal,
    #[default]
    OptimizeSaturate,
    GoalPath {
        alpha: f64,
        beta: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigaConfig {
    /// Feedback gain `K`.
    pub gain: f64,
    pub t_final: f64,
    pub n_sim: usize,
    pub target_infidelity: f64,
    pub max_steps: usize,
    #[serde(default)]
    pub variant: Variant,
    #[serde(default)]
    pub lyapunov: LyapunovKind,
    #[serde(default)]
    pub strategy: GoalStrategy,
    #[serde(default)]
    pub shaping: ShapingConfig,
    pub seed: SeedConfig,
    /// Explicit seed coefficients; drawn from `seed` when absent.
    #[serde(default)]
    pub seed_coefficients: Option<SeedCoefficients>,
    /// Gradient step of the GRAPE baseline; `gain / delta` when absent.
    #[serde(default)]
    pub grape_step: Option<f64>,
    /// Stop the GRAPE baseline once the cost drops to this value.
    #[serde(default)]
    pub omega_target: Option<f64>,
}

impl RigaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gain >= 0.0 && self.gain.is_finite()) {
            return Err(Error::InvalidConfig("gain must be non-negative".into()));
        }
        if !(self.target_infidelity > 0.0 && self.target_infidelity < 1.0) {
            return Err(Error::InvalidConfig("target infidelity must lie in (0, 1)".into()));
        }
        if let GoalStrategy::GoalPath { alpha, beta } = self.strategy {
            if !(0.0 < alpha && alpha < beta && beta < 2.0) {
                return Err(Error::InvalidConfig("goal path needs 0 < alpha < beta < 2".into()));
            }
        }
        self.shaping.validate()?;
        self.seed.validate()?;
        TimeGrid::new(self.t_final, self.n_sim)?;
        Ok(())
    }

    pub fn grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.t_final, self.n_sim)
    }

    pub fn feedback(&self) -> FeedbackConfig {
        FeedbackConfig { gain: self.gain, lyapunov: self.lyapunov, shaping: self.shaping }
    }

    /// Seed pulses on the run grid.
    pub fn initial_pulses(&self, m: usize) -> Result<PulseSet> {
        let grid = self.grid()?;
        let mode = self.variant.pulse_mode();
        let pulses = match &self.seed_coefficients {
            Some(coeffs) => {
                coeffs.check(m)?;
                coeffs.evaluate(self.seed.period, self.seed.apply_window, &grid, mode)
            }
            None => generate_seed(&self.seed, m, &grid, mode)?,
        };
        if self.shaping.saturation == SaturationKind::Smooth {
            check_seed_bounds(&pulses, self.shaping.u_max)?;
        }
        Ok(pulses)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    /// Infidelity of the open-loop final propagator checked at this step.
    pub infidelity: f64,
    /// Lyapunov value at the end of this step's closed-loop pass (the GRAPE
    /// cost for the baseline); absent on the step that stops the run.
    pub lyapunov: Option<f64>,
    pub goal_index: usize,
    pub max_pulse: f64,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum Termination {
    Converged,
    MaxSteps,
    Stagnated,
    NoReachableGoal { previous: usize },
    CayleyBlowup { step: usize },
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub records: Vec<StepRecord>,
    pub pulses: PulseSet,
    pub final_propagator: Unitary,
    pub final_infidelity: f64,
    /// Number of closed-loop (or gradient) passes performed.
    pub passes: usize,
    pub termination: Termination,
}

impl RunReport {
    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }

    /// The report as a `Result`, mapping every non-converged outcome to its
    /// error.
    pub fn into_result(self) -> Result<Self> {
        match self.termination {
            Termination::Converged => Ok(self),
            Termination::MaxSteps | Termination::Stagnated => {
                Err(Error::NonConvergence { steps: self.passes, infidelity: self.final_infidelity })
            }
            Termination::NoReachableGoal { previous } => Err(Error::NoReachableGoal { previous }),
            Termination::CayleyBlowup { step } => Err(Error::CayleyBlowup { step }),
        }
    }
}

const STAGNATION_WINDOW: usize = 20;
const STAGNATION_TOL: f64 = 1e-9;

fn stagnated(history: &[f64]) -> bool {
    if history.len() <= STAGNATION_WINDOW {
        return false;
    }
    let now = history[history.len() - 1];
    let then = history[history.len() - 1 - STAGNATION_WINDOW];
    then <= 0.0 || (then - now) / then < STAGNATION_TOL
}

fn lyapunov_value(kind: LyapunovKind, xt: &Unitary, spec: &GateSpec) -> f64 {
    match kind {
        LyapunovKind::Partial => lyapunov_partial(xt, spec.e()),
        LyapunovKind::Full => lyapunov_full(xt).unwrap_or(f64::INFINITY),
    }
}

fn check_inputs(sys: &SystemModel, spec: &GateSpec, cfg: &RigaConfig) -> Result<()> {
    cfg.validate()?;
    if spec.n() != sys.n() {
        return Err(Error::DimensionMismatch(format!("gate acts on {} levels, system has {}", spec.n(), sys.n())));
    }
    if cfg.lyapunov == LyapunovKind::Full && !spec.is_full() {
        return Err(Error::InvalidConfig("the full Lyapunov function needs the whole space encoded".into()));
    }
    Ok(())
}

/// Open-loop run of `pulses` from the identity.
struct OpenPass {
    trajectory: Trajectory,
    stages: Vec<crate::integrate::StagePoints>,
}

fn open_pass(sys: &SystemModel, pulses: &PulseSet, grid: &TimeGrid) -> Result<OpenPass> {
    let id = Unitary::identity(sys.n());
    match pulses.mode {
        PulseMode::Smooth => {
            let run = propagate_smooth_open(sys, pulses, grid, &id)?;
            Ok(OpenPass { trajectory: run.trajectory, stages: run.stages })
        }
        PulseMode::Piecewise => {
            Ok(OpenPass { trajectory: propagate_pc_forward(sys, pulses, grid, &id)?, stages: Vec::new() })
        }
    }
}

/// Goal selection state kept across steps.
enum GoalState {
    Fixed,
    Saturate,
    Path { alpha: f64, beta: f64, path: Option<GoalPath> },
}

impl GoalState {
    fn new(strategy: GoalStrategy) -> Self {
        match strategy {
            GoalStrategy::FixedGoal => GoalState::Fixed,
            GoalStrategy::OptimizeSaturate => GoalState::Saturate,
            GoalStrategy::GoalPath { alpha, beta } => GoalState::Path { alpha, beta, path: None },
        }
    }

    fn select(&mut self, x_f: &Unitary, spec: &GateSpec) -> Result<(Unitary, usize)> {
        match self {
            GoalState::Fixed => Ok((spec.goal().clone(), 0)),
            GoalState::Saturate => Ok((strategy_one_goal(spec.goal(), x_f, spec, DEFAULT_THETA_MAX)?, 0)),
            GoalState::Path { alpha, beta, path } => {
                if path.is_none() {
                    let (star, _) = optgoal(spec.goal(), x_f, spec, true)?;
                    *path = Some(build_goal_path(x_f, &star, spec, *alpha, *beta)?);
                }
                let path = path.as_mut().expect("built above");
                let q = switch_select(path, x_f, spec)?;
                Ok((path.matrices[q].clone(), q))
            }
        }
    }
}

/// Runs the iterative synthesis from the configured seed.
pub fn run_riga(sys: &SystemModel, spec: &GateSpec, cfg: &RigaConfig) -> Result<RunReport> {
    check_inputs(sys, spec, cfg)?;
    let seed = cfg.initial_pulses(sys.m())?;
    run_riga_from(sys, spec, cfg, seed)
}

/// Runs the iterative synthesis from explicit seed pulses. Invalid input is
/// an error; every other outcome is described by the report's termination.
pub fn run_riga_from(sys: &SystemModel, spec: &GateSpec, cfg: &RigaConfig, seed: PulseSet) -> Result<RunReport> {
    check_inputs(sys, spec, cfg)?;
    let grid = cfg.grid()?;
    if seed.mode != cfg.variant.pulse_mode() {
        return Err(Error::InvalidConfig("seed pulses do not match the configured variant".into()));
    }
    seed.check(sys.m(), &grid)?;
    if cfg.shaping.saturation == SaturationKind::Smooth {
        check_seed_bounds(&seed, cfg.shaping.u_max)?;
    }
    let feedback = cfg.feedback();
    let mut goals = GoalState::new(cfg.strategy);
    let mut pulses = seed;
    let mut records = Vec::new();
    let mut history = Vec::new();
    let mut passes = 0;
    let started = Instant::now();

    let stop = |pulses: PulseSet, x_f: Unitary, inf: f64, passes: usize, records: Vec<StepRecord>, termination| {
        Ok(RunReport { records, pulses, final_propagator: x_f, final_infidelity: inf, passes, termination })
    };

    for step in 1.. {
        let open = match open_pass(sys, &pulses, &grid) {
            Ok(o) => o,
            Err(Error::CayleyBlowup { step }) => {
                let x_f = Unitary::identity(sys.n());
                return stop(pulses, x_f, f64::NAN, passes, records, Termination::CayleyBlowup { step });
            }
            Err(e) => return Err(e),
        };
        let x_f = open.trajectory.last().clone();
        let inf = infidelity(&x_f, spec);
        history.push(inf);
        let mut record = StepRecord {
            step,
            infidelity: inf,
            lyapunov: None,
            goal_index: 0,
            max_pulse: pulses.max_abs(),
            wall_ms: 0.0,
        };
        let wall = |r: &mut StepRecord| r.wall_ms = started.elapsed().as_secs_f64() * 1e3;

        let done = if inf <= cfg.target_infidelity {
            Some(Termination::Converged)
        } else if passes >= cfg.max_steps {
            Some(Termination::MaxSteps)
        } else if stagnated(&history) {
            Some(Termination::Stagnated)
        } else {
            None
        };
        if let Some(t) = done {
            wall(&mut record);
            records.push(record);
            return stop(pulses, x_f, inf, passes, records, t);
        }

        let (goal, q) = match goals.select(&x_f, spec) {
            Ok(g) => g,
            Err(Error::NoReachableGoal { previous }) => {
                wall(&mut record);
                records.push(record);
                return stop(pulses, x_f, inf, passes, records, Termination::NoReachableGoal { previous });
            }
            Err(e) => return Err(e),
        };
        record.goal_index = q;
        let r = &x_f.adjoint() * &goal;
        let reference = open.trajectory.right_translate(&r);

        let closed = match pulses.mode {
            PulseMode::Smooth => {
                propagate_smooth_closed(sys, spec.e(), &reference, &open.stages, &pulses, &grid, &feedback)
                    .map(|c| (c.trajectory, c.pulses))
            }
            PulseMode::Piecewise => {
                propagate_pc_closed(sys, spec.e(), &reference, &pulses, &grid, &feedback, PiecewiseMode::Riga)
            }
        };
        let (trajectory, next) = match closed {
            Ok(c) => c,
            Err(Error::CayleyBlowup { step: s }) => {
                wall(&mut record);
                records.push(record);
                return stop(pulses, x_f, inf, passes, records, Termination::CayleyBlowup { step: s });
            }
            Err(e) => return Err(e),
        };
        passes += 1;
        let xt = &reference.last().adjoint() * trajectory.last();
        record.lyapunov = Some(lyapunov_value(cfg.lyapunov, &xt, spec));
        wall(&mut record);
        records.push(record);
        pulses = next;
    }
    unreachable!("the loop only exits through a return")
}

/// First-order GRAPE on piecewise-constant pulses, realized as lagged
/// closed-loop sweeps against the backward-propagated fixed goal.
pub fn run_grape(sys: &SystemModel, spec: &GateSpec, cfg: &RigaConfig) -> Result<RunReport> {
    check_inputs(sys, spec, cfg)?;
    if cfg.variant != Variant::Piecewise {
        return Err(Error::InvalidConfig("the GRAPE baseline needs the piecewise variant".into()));
    }
    let seed = cfg.initial_pulses(sys.m())?;
    run_grape_from(sys, spec, cfg, seed)
}

pub fn run_grape_from(sys: &SystemModel, spec: &GateSpec, cfg: &RigaConfig, seed: PulseSet) -> Result<RunReport> {
    check_inputs(sys, spec, cfg)?;
    let grid = cfg.grid()?;
    if seed.mode != PulseMode::Piecewise {
        return Err(Error::InvalidConfig("the GRAPE baseline needs piecewise pulses".into()));
    }
    seed.check(sys.m(), &grid)?;
    let step_size = cfg.grape_step.unwrap_or(cfg.gain / grid.delta());
    let feedback = FeedbackConfig { gain: step_size * grid.delta(), ..cfg.feedback() };
    let id = Unitary::identity(sys.n());
    let mut pulses = seed;
    let mut records = Vec::new();
    let mut history = Vec::new();
    let mut passes = 0;
    let started = Instant::now();
    for step in 1.. {
        let x_f = propagate_pc_forward(sys, &pulses, &grid, &id)?.last().clone();
        let inf = infidelity(&x_f, spec);
        let omega = lyapunov_value(cfg.lyapunov, &(&spec.goal().adjoint() * &x_f), spec);
        history.push(inf);
        let reached = match cfg.omega_target {
            Some(target) => omega <= target,
            None => inf <= cfg.target_infidelity,
        };
        let done = if reached {
            Some(Termination::Converged)
        } else if passes >= cfg.max_steps {
            Some(Termination::MaxSteps)
        } else if stagnated(&history) {
            Some(Termination::Stagnated)
        } else {
            None
        };
        let mut record = StepRecord {
            step,
            infidelity: inf,
            lyapunov: Some(omega),
            goal_index: 0,
            max_pulse: pulses.max_abs(),
            wall_ms: 0.0,
        };
        if let Some(termination) = done {
            record.wall_ms = started.elapsed().as_secs_f64() * 1e3;
            records.push(record);
            return Ok(RunReport {
                records,
                pulses,
                final_propagator: x_f,
                final_infidelity: inf,
                passes,
                termination,
            });
        }
        let reference = propagate_pc_backward(sys, &pulses, &grid, spec.goal())?;
        let (_, next) =
            propagate_pc_closed(sys, spec.e(), &reference, &pulses, &grid, &feedback, PiecewiseMode::GrapeLagged)?;
        passes += 1;
        record.wall_ms = started.elapsed().as_secs_f64() * 1e3;
        records.push(record);
        pulses = next;
    }
    unreachable!("the loop only exits through a return")
}

/// Infidelity of `pulses` simulated open loop in a larger model.
pub fn resimulate(
    sys_expanded: &SystemModel,
    pulses: &PulseSet,
    grid: &TimeGrid,
    spec_embedded: &GateSpec,
) -> Result<f64> {
    let x_f = open_pass(sys_expanded, pulses, grid)?.trajectory.last().clone();
    Ok(infidelity(&x_f, spec_embedded))
}
