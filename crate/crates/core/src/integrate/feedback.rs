// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::chart_ok;
use crate::error::{Error, Result};
use crate::linalg::{cayley_forward_raw, trace_of_product, ComplexMatrix, Isometry};
use crate::problem::{re_trace_rows, z_from_cayley, LyapunovKind, ShapingConfig, SystemModel};

/// Gain, Lyapunov function and shaping used inside a closed-loop pass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeedbackConfig {
    pub gain: f64,
    pub lyapunov: LyapunovKind,
    pub shaping: ShapingConfig,
}

/// Reference-dependent data reused for every evaluation at one instant.
pub(crate) struct ReferencePoint {
    xbar: ComplexMatrix,
    /// `(Xbar E)^H S_k` for the partial-trace law.
    rows: Vec<ComplexMatrix>,
}

impl FeedbackConfig {
    pub(crate) fn prepare(&self, sys: &SystemModel, e: &Isometry, xbar: &ComplexMatrix) -> ReferencePoint {
        let rows = match self.lyapunov {
            LyapunovKind::Partial => {
                let ybar_h = (xbar * e.matrix()).adjoint();
                sys.controls().iter().map(|s| &ybar_h * s.matrix()).collect()
            }
            LyapunovKind::Full => Vec::new(),
        };
        ReferencePoint { xbar: xbar.clone(), rows }
    }

    /// Unshaped corrections `u~_k` for state `x` against `point`.
    pub(crate) fn corrections(
        &self,
        sys: &SystemModel,
        e: &Isometry,
        point: &ReferencePoint,
        x: &ComplexMatrix,
        out: &mut [f64],
    ) -> Result<()> {
        match self.lyapunov {
            LyapunovKind::Partial => {
                let y = x * e.matrix();
                for (o, row) in out.iter_mut().zip(&point.rows) {
                    *o = 2.0 * self.gain * re_trace_rows(row, &y);
                }
            }
            LyapunovKind::Full => {
                let xt = point.xbar.adjoint() * x;
                let w = cayley_forward_raw(&xt)
                    .filter(chart_ok)
                    .ok_or(Error::SingularAtMinusOne { distance: 0.0, tol: 0.0 })?;
                // trace(Z Xbar^H S Xbar) = trace(Xbar Z Xbar^H S)
                let m = &point.xbar * z_from_cayley(&w) * point.xbar.adjoint();
                for (o, s) in out.iter_mut().zip(sys.controls()) {
                    *o = 4.0 * self.gain * trace_of_product(&m, s.matrix()).re;
                }
            }
        }
        Ok(())
    }

    /// `u_k = combine(ubar_k, w * u~_k)` channel by channel.
    pub(crate) fn shape(&self, reference: &[f64], corrections: &[f64], window: f64, out: &mut [f64]) -> Result<()> {
        for (k, ((o, &r), &c)) in out.iter_mut().zip(reference).zip(corrections).enumerate() {
            *o = self.shaping.combine(r, window * c).map_err(|err| match err {
                Error::SeedOutOfBounds { value, u_max, .. } => Error::SeedOutOfBounds { channel: k + 1, value, u_max },
                other => other,
            })?;
        }
        Ok(())
    }
}
