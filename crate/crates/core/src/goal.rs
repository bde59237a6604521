// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Goal selection between steps.
//!
//! The encoded problem only fixes `X_goal E` (up to a phase), so the
//! complement block of the goal and its global phase are free. Each step
//! either re-optimizes those degrees of freedom towards the current final
//! propagator and clamps the error eigenphases, or walks along a
//! precomputed path of intermediate goals.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::error::{Error, Result};
use crate::linalg::{
    c, eigphases, partial_distance, pth_root, saturate_eigenphases, trace_of_product, ComplexMatrix, Unitary,
};
use crate::problem::{lyapunov_full, GateSpec};

/// Unitary closest to `x_f` in Frobenius norm among those agreeing with
/// `x_goal` on the encoded subspace, up to a global phase when
/// `allow_phase` is set. Returns the goal and the phase.
pub fn optgoal(x_goal: &Unitary, x_f: &Unitary, spec: &GateSpec, allow_phase: bool) -> Result<(Unitary, f64)> {
    let n = spec.n();
    let nbar = spec.nbar();
    if x_goal.dim() != n || x_f.dim() != n {
        return Err(Error::DimensionMismatch(format!("optgoal expects {n}x{n} unitaries")));
    }
    if spec.is_full() {
        if !allow_phase {
            return Ok((x_goal.clone(), 0.0));
        }
        let phi = trace_of_product(&x_goal.matrix().adjoint(), x_f.matrix()).arg();
        return Ok((x_goal.scale_phase(phi), phi));
    }

    let basis = spec.e().completion();
    let wf = basis.adjoint().matrix() * x_f.matrix() * basis.matrix();
    let wg = basis.adjoint().matrix() * x_goal.matrix() * basis.matrix();
    let (wf1, wf2) = (wf.columns(0, nbar), wf.columns(nbar, n - nbar));
    let (wg1, wg2) = (wg.columns(0, nbar), wg.columns(nbar, n - nbar));

    // complement block: orthogonal Procrustes
    let inner = wg2.adjoint() * wf2;
    let svd = inner.svd(true, true);
    let h = svd.u.expect("requested U") * svd.v_t.expect("requested V^H");
    let wg2h = wg2 * h;

    // encoded block: the two stationary phases of Re(e^{-i phi} tr W11)
    let phi = if allow_phase {
        let tr = (wg1.adjoint() * wf1).trace();
        let theta = c(tr.im, -tr.re).arg();
        let cost = |p: f64| (wg1 * c(p.cos(), p.sin()) - wf1).norm();
        let candidates = [wrap(theta + FRAC_PI_2), wrap(theta - FRAC_PI_2)];
        let (c1, c2) = (cost(candidates[0]), cost(candidates[1]));
        if c1 < c2 || (c1 == c2 && candidates[0].abs() <= candidates[1].abs()) {
            candidates[0]
        } else {
            candidates[1]
        }
    } else {
        0.0
    };

    let mut w_opt = ComplexMatrix::zeros(n, n);
    w_opt.columns_mut(0, nbar).copy_from(&(wg1 * c(phi.cos(), phi.sin())));
    w_opt.columns_mut(nbar, n - nbar).copy_from(&wg2h);
    let x_star = basis.matrix() * w_opt * basis.adjoint().matrix();
    Ok((Unitary::new_unchecked(x_star), phi))
}

fn wrap(phi: f64) -> f64 {
    let t = phi.sin().atan2(phi.cos());
    if t == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        t
    }
}

/// Number of eigenphases of `x_star^H x_f` within `1e-8` of zero.
pub fn eigenopt_unit_count(x_star: &Unitary, x_f: &Unitary) -> usize {
    let r = &x_star.adjoint() * x_f;
    eigphases(&r).phases.iter().filter(|t| t.abs() <= 1e-8).count()
}

/// Optimize, then clamp the eigenphases of `R = X_f^H X*` to `theta_max`;
/// returns `X_f R_sat`.
pub fn strategy_one_goal(x_goal: &Unitary, x_f: &Unitary, spec: &GateSpec, theta_max: f64) -> Result<Unitary> {
    let (x_star, _) = optgoal(x_goal, x_f, spec, true)?;
    let r = &x_f.adjoint() * &x_star;
    Ok(x_f * &saturate_eigenphases(&r, theta_max))
}

/// Clamp used by [`strategy_one_goal`] in the driver.
pub const DEFAULT_THETA_MAX: f64 = FRAC_PI_4;

/// Distance used by the goal path: the partial distance, or the square
/// root of the full Lyapunov function when the whole space is encoded.
/// Points beyond the Cayley chart are infinitely far.
pub fn goal_distance(a: &Unitary, b: &Unitary, spec: &GateSpec) -> Result<f64> {
    if spec.is_full() {
        Ok(lyapunov_full(&(&a.adjoint() * b)).map_or(f64::INFINITY, f64::sqrt))
    } else {
        partial_distance(a, b, spec.e())
    }
}

#[derive(Clone, Debug)]
pub struct GoalPath {
    pub matrices: Vec<Unitary>,
    pub alpha: f64,
    pub beta: f64,
    pub current: usize,
}

impl GoalPath {
    /// Number of hops `p`.
    pub fn hops(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn current_goal(&self) -> &Unitary {
        &self.matrices[self.current]
    }
}

const MAX_HOPS: u32 = 1 << 16;

/// Path `X_f0 Sigma^q`, `Sigma` the principal `p`-th root of
/// `X_f0^H X*`, with the fewest hops keeping consecutive distances within
/// `alpha`. The endpoint is `x_goal_star` itself.
pub fn build_goal_path(
    x_f0: &Unitary,
    x_goal_star: &Unitary,
    spec: &GateSpec,
    alpha: f64,
    beta: f64,
) -> Result<GoalPath> {
    if !(0.0 < alpha && alpha < beta && beta < 2.0) {
        return Err(Error::InvalidConfig(format!("goal path needs 0 < alpha < beta < 2, got {alpha}, {beta}")));
    }
    let r = &x_f0.adjoint() * x_goal_star;
    if goal_distance(x_f0, x_goal_star, spec)? == 0.0 {
        return Ok(GoalPath { matrices: vec![x_goal_star.clone()], alpha, beta, current: 0 });
    }
    let id = Unitary::identity(spec.n());
    let mut p = 1u32;
    // first candidate from the single-hop bound, then verify every hop
    while p < MAX_HOPS && goal_distance(&id, &pth_root(&r, p), spec)? > alpha {
        p += 1;
    }
    loop {
        let sigma = pth_root(&r, p);
        let mut matrices = Vec::with_capacity(p as usize + 1);
        matrices.push(x_f0.clone());
        for _ in 1..p {
            let next = matrices.last().unwrap() * &sigma;
            matrices.push(next);
        }
        matrices.push(x_goal_star.clone());
        let mut ok = true;
        for pair in matrices.windows(2) {
            if goal_distance(&pair[0], &pair[1], spec)? > alpha {
                ok = false;
                break;
            }
        }
        if ok || p >= MAX_HOPS {
            return Ok(GoalPath { matrices, alpha, beta, current: 1 });
        }
        p += 1;
    }
}

/// Largest index `q >= current` whose goal lies within `beta` of `x_f`.
/// Updates and returns the index.
pub fn switch_select(path: &mut GoalPath, x_f: &Unitary, spec: &GateSpec) -> Result<usize> {
    let mut best = None;
    for q in (path.current..path.matrices.len()).rev() {
        if goal_distance(&path.matrices[q], x_f, spec)? <= path.beta {
            best = Some(q);
            break;
        }
    }
    match best {
        Some(q) => {
            path.current = q;
            Ok(q)
        }
        None => Err(Error::NoReachableGoal { previous: path.current }),
    }
}
