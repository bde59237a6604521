// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{propagate_pc_forward, propagate_smooth_open};
use crate::error::Result;
use crate::linalg::{c, trace_of_product, unitary_projection, ComplexMatrix, Unitary};
use crate::problem::SystemModel;
use crate::pulse::{PulseMode, PulseSet, TimeGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Correction {
    None,
    UnitaryProjection,
}

/// Classical RK4 on `dX/dt = S(t) X` in the ambient matrix space, with an
/// optional projection back onto the unitary group after every step.
/// Piecewise pulses are held constant over each step.
pub fn direct_rk4_diagnostic(
    sys: &SystemModel,
    pulses: &PulseSet,
    grid: &TimeGrid,
    correction: Correction,
) -> Result<Vec<ComplexMatrix>> {
    pulses.check(sys.m(), grid)?;
    let n = sys.n();
    let d = c(grid.delta(), 0.0);
    let half = c(0.5, 0.0);
    let mut u = vec![0.0; sys.m()];
    let mut gen = |s: usize, frac: f64| {
        match pulses.mode {
            PulseMode::Smooth => pulses.interpolate(s, frac, &mut u),
            PulseMode::Piecewise => u.copy_from_slice(&pulses.column(s)),
        }
        sys.generator(&u)
    };
    let mut out = Vec::with_capacity(grid.n_sim + 1);
    let mut x = ComplexMatrix::identity(n, n);
    out.push(x.clone());
    for s in 0..grid.n_sim {
        let (g0, gh, g1) = (gen(s, 0.0), gen(s, 0.5), gen(s, 1.0));
        let k1 = &g0 * &x * d;
        let k2 = &gh * (&x + &k1 * half) * d;
        let k3 = &gh * (&x + &k2 * half) * d;
        let k4 = &g1 * (&x + &k3) * d;
        x += (k1 + (k2 + k3) * c(2.0, 0.0) + k4) * c(1.0 / 6.0, 0.0);
        if correction == Correction::UnitaryProjection {
            x = unitary_projection(&x)?.into_matrix();
        }
        out.push(x.clone());
    }
    Ok(out)
}

/// `1 - |trace(A^H B) / n|^2`.
pub fn final_infidelity_full(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let n = a.nrows() as f64;
    1.0 - (trace_of_product(&a.adjoint(), b).norm() / n).powi(2)
}

/// Full-space infidelity between the final propagators at step `delta`
/// and at `delta / 2`.
pub fn halfstep_infidelity(sys: &SystemModel, pulses: &PulseSet, grid: &TimeGrid) -> Result<f64> {
    let id = Unitary::identity(sys.n());
    let fine = grid.refined(2);
    let (coarse_end, fine_end) = match pulses.mode {
        PulseMode::Smooth => {
            let a = propagate_smooth_open(sys, pulses, grid, &id)?;
            let b = propagate_smooth_open(sys, &pulses.refine_smooth(2), &fine, &id)?;
            (a.trajectory.last().clone(), b.trajectory.last().clone())
        }
        PulseMode::Piecewise => {
            let doubled = PulseSet {
                mode: PulseMode::Piecewise,
                values: pulses.values.iter().map(|ch| ch.iter().flat_map(|&v| [v, v]).collect()).collect(),
            };
            let a = propagate_pc_forward(sys, pulses, grid, &id)?;
            let b = propagate_pc_forward(sys, &doubled, &fine, &id)?;
            (a.last().clone(), b.last().clone())
        }
    };
    Ok(final_infidelity_full(coarse_end.matrix(), fine_end.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrate::{propagate_pc_backward, propagate_pc_closed, FeedbackConfig, PiecewiseMode};
    use crate::linalg::testutil::*;
    use crate::linalg::{unitarity_defect, Isometry, SkewHermitian};
    use crate::problem::{lyapunov_partial, LyapunovKind, ShapingConfig};
    use rand::Rng;

    fn random_system(n: usize, m: usize, seed: u64) -> SystemModel {
        let mut r = rng(seed);
        let drift = random_skew(n, &mut r);
        let controls = (0..m).map(|_| random_skew(n, &mut r)).collect();
        SystemModel::new(drift, controls).unwrap()
    }

    fn smooth_pulses(m: usize, grid: &TimeGrid, seed: u64) -> PulseSet {
        let mut r = rng(seed);
        let phases: Vec<f64> = (0..m).map(|_| 6.0 * r.random::<f64>()).collect();
        let values =
            phases.iter().map(|ph| (0..=grid.n_sim).map(|s| 0.8 * (2.1 * grid.t(s) + ph).cos()).collect()).collect();
        PulseSet { mode: PulseMode::Smooth, values }
    }

    #[test]
    fn zero_generator_gives_identity() {
        let sys = SystemModel::new(SkewHermitian::zeros(3), vec![SkewHermitian::zeros(3)]).unwrap();
        let g = TimeGrid::new(1.0, 10).unwrap();
        let p = PulseSet::zeros(PulseMode::Smooth, 1, &g);
        for corr in [Correction::None, Correction::UnitaryProjection] {
            let tr = direct_rk4_diagnostic(&sys, &p, &g, corr).unwrap();
            assert!(tr.iter().all(|x| unitarity_defect(x) == 0.0));
        }
        assert_eq!(halfstep_infidelity(&sys, &p, &g).unwrap(), 0.0);
    }

    #[test]
    fn projection_controls_unitarity_defect() {
        let sys = random_system(4, 2, 30);
        let g = TimeGrid::new(8.0, 80).unwrap();
        let p = smooth_pulses(2, &g, 31);
        let raw = direct_rk4_diagnostic(&sys, &p, &g, Correction::None).unwrap();
        let d: Vec<f64> = raw.iter().map(unitarity_defect).collect();
        assert!(d[80] > d[40] && d[40] > d[10] && d[10] > 0.0);
        let fixed = direct_rk4_diagnostic(&sys, &p, &g, Correction::UnitaryProjection).unwrap();
        assert!(fixed.iter().all(|x| unitarity_defect(x) <= 1e-9));
    }

    #[test]
    fn cayley_beats_projected_rk4() {
        let sys = random_system(4, 2, 32);
        let g = TimeGrid::new(4.0, 40).unwrap();
        let p = smooth_pulses(2, &g, 33);
        let fine = TimeGrid::new(4.0, 40 * 64).unwrap();
        let exact = propagate_smooth_open(&sys, &p.refine_smooth(64), &fine, &Unitary::identity(4)).unwrap();
        let exact = exact.trajectory.last().matrix().clone();
        let cay = propagate_smooth_open(&sys, &p, &g, &Unitary::identity(4)).unwrap();
        let proj = direct_rk4_diagnostic(&sys, &p, &g, Correction::UnitaryProjection).unwrap();
        let e_cay = (cay.trajectory.last().matrix() - &exact).norm();
        let e_proj = (proj.last().unwrap() - &exact).norm();
        assert!(e_cay < e_proj, "cayley {e_cay:e} projected {e_proj:e}");
    }

    #[test]
    fn halfstep_order_sweep() {
        let sys = random_system(4, 2, 34);
        let mut vals = Vec::new();
        for n in [40, 80] {
            let g = TimeGrid::new(3.0, n).unwrap();
            // same continuous input at both resolutions
            let coarse = TimeGrid::new(3.0, 10).unwrap();
            let p = smooth_pulses(2, &coarse, 35).refine_smooth(n / 10);
            vals.push(halfstep_infidelity(&sys, &p, &g).unwrap());
        }
        let ratio = vals[0] / vals[1];
        // the infidelity is quadratic in a fourth-order propagator error
        assert!((64.0..=1024.0).contains(&ratio), "ratio {ratio}");
        let sqrt_ratio = ratio.sqrt();
        assert!((8.0..=32.0).contains(&sqrt_ratio), "sqrt ratio {sqrt_ratio}");
    }

    #[test]
    fn piecewise_sampling_approaches_smooth() {
        let sys = random_system(3, 2, 36);
        let g = TimeGrid::new(2.0, 20).unwrap();
        let p = smooth_pulses(2, &g, 37);
        let fine = g.refined(64);
        let smooth = propagate_smooth_open(&sys, &p.refine_smooth(64), &fine, &Unitary::identity(3)).unwrap();
        let target = smooth.trajectory.last().matrix().clone();
        let mut prev = f64::INFINITY;
        for r in [1, 4, 16, 64] {
            let pc = p.sample_piecewise(r);
            let x = propagate_pc_forward(&sys, &pc, &g.refined(r), &Unitary::identity(3)).unwrap();
            let err = (x.last().matrix() - &target).norm();
            assert!(err < prev, "r = {r}: {err:e} vs {prev:e}");
            prev = err;
        }
        assert!(prev < 1e-2);
    }

    /// Lagged update against a central-difference gradient of the final
    /// partial-trace Lyapunov value.
    #[test]
    fn lagged_update_is_scaled_gradient() {
        let sys = random_system(2, 2, 38);
        let e = Isometry::leading_columns(2, 2);
        let goal = random_unitary(2, &mut rng(39));
        let g = TimeGrid::new(1.0, 400).unwrap();
        let mut r = rng(40);
        let mut p = PulseSet::zeros(PulseMode::Piecewise, 2, &g);
        for v in p.values.iter_mut().flatten() {
            *v = r.random::<f64>() - 0.5;
        }
        let gain = 0.3;
        let fb = FeedbackConfig { gain, lyapunov: LyapunovKind::Partial, shaping: ShapingConfig::default() };
        let reference = propagate_pc_backward(&sys, &p, &g, &goal).unwrap();
        let (_, updated) = propagate_pc_closed(&sys, &e, &reference, &p, &g, &fb, PiecewiseMode::GrapeLagged).unwrap();
        let omega = |q: &PulseSet| {
            let xf = propagate_pc_forward(&sys, q, &g, &Unitary::identity(2)).unwrap();
            lyapunov_partial(&(&goal.adjoint() * xf.last()), &e)
        };
        let h = 1e-4;
        for k in 0..2 {
            for s in [0, 57, 200, 399] {
                let mut plus = p.clone();
                plus.values[k][s] += h;
                let mut minus = p.clone();
                minus.values[k][s] -= h;
                let grad = (omega(&plus) - omega(&minus)) / (2.0 * h);
                let want = -gain / g.delta() * grad;
                let got = updated.values[k][s] - p.values[k][s];
                assert!((got - want).abs() <= 0.05 * want.abs(), "k={k} s={s}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn riga_and_lagged_modes_converge_with_step() {
        let sys = random_system(3, 2, 41);
        let e = Isometry::leading_columns(3, 2);
        let goal = random_unitary(3, &mut rng(42));
        let step_gain = 0.5;
        let mut diffs = Vec::new();
        let ns = [50usize, 100, 200, 400];
        for &n in &ns {
            let g = TimeGrid::new(1.0, n).unwrap();
            let base = TimeGrid::new(1.0, 50).unwrap();
            let p = smooth_pulses(2, &base, 43).sample_piecewise(n / 50);
            let fb = FeedbackConfig {
                gain: step_gain * g.delta(),
                lyapunov: LyapunovKind::Partial,
                shaping: ShapingConfig::default(),
            };
            let reference = propagate_pc_backward(&sys, &p, &g, &goal).unwrap();
            let (a, _) = propagate_pc_closed(&sys, &e, &reference, &p, &g, &fb, PiecewiseMode::Riga).unwrap();
            let (b, _) = propagate_pc_closed(&sys, &e, &reference, &p, &g, &fb, PiecewiseMode::GrapeLagged).unwrap();
            diffs.push((a.last().matrix() - b.last().matrix()).norm());
        }
        let slope = (diffs[0] / diffs[3]).ln() / (ns[3] as f64 / ns[0] as f64).ln();
        assert!(slope >= 1.0 - 0.05, "slope {slope} diffs {diffs:?}");
    }
}
