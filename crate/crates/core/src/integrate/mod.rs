// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Propagation on the unitary group.
//!
//! Piecewise-constant pulses are stepped with exact exponentials. Smooth
//! pulses are integrated with a fourth-order Runge-Kutta scheme in the
//! Cayley chart, re-centred at the identity every step so that only
//! well-conditioned solves occur.

mod diagnostics;
mod feedback;
mod piecewise;
mod smooth;

pub use diagnostics::{direct_rk4_diagnostic, final_infidelity_full, halfstep_infidelity, Correction};
pub use feedback::FeedbackConfig;
pub use piecewise::{propagate_pc_backward, propagate_pc_closed, propagate_pc_forward, PiecewiseMode};
pub use smooth::{propagate_smooth_closed, propagate_smooth_open, ClosedLoop, OpenLoop, StagePoints};

use crate::linalg::{c, is_finite, ComplexMatrix, Unitary};

/// Propagator samples `X_0 ..= X_{n_sim}`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<Unitary>,
}

impl Trajectory {
    pub fn first(&self) -> &Unitary {
        &self.samples[0]
    }

    pub fn last(&self) -> &Unitary {
        self.samples.last().expect("trajectories are never empty")
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_unitarity_defect(&self) -> f64 {
        self.samples.iter().map(Unitary::unitarity_defect).fold(0.0, f64::max)
    }

    /// Right translation `X(t) R`.
    pub fn right_translate(&self, r: &Unitary) -> Self {
        Self { samples: self.samples.iter().map(|x| x * r).collect() }
    }
}

/// Right-hand side of the chart dynamics `-(W - I) S (W + I) / 2`.
pub(crate) fn chart_rhs(w: &ComplexMatrix, s: &ComplexMatrix) -> ComplexMatrix {
    let n = w.nrows();
    let id = ComplexMatrix::identity(n, n);
    ((w - &id) * s * (w + &id)) * c(-0.5, 0.0)
}

/// Above this Frobenius norm the chart is considered to have left its
/// domain (an eigenphase within about `2e-6` of pi).
pub(crate) const CHART_LIMIT: f64 = 1e6;

pub(crate) fn chart_ok(w: &ComplexMatrix) -> bool {
    is_finite(w) && w.norm() < CHART_LIMIT
}
