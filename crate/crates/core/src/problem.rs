// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! System model, gate specification, Lyapunov functions, feedback laws and
//! pulse shaping.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, cayley_forward, trace_of_product, ComplexMatrix, Isometry, SkewHermitian, Unitary};

/// Drift `S_0 = -i H_0` and control generators `S_k = -i H_k`.
#[derive(Clone, Debug)]
pub struct SystemModel {
    drift: SkewHermitian,
    controls: Vec<SkewHermitian>,
}

impl SystemModel {
    pub fn new(drift: SkewHermitian, controls: Vec<SkewHermitian>) -> Result<Self> {
        if controls.is_empty() {
            return Err(Error::InvalidConfig("a system needs at least one control".into()));
        }
        let n = drift.dim();
        if let Some(bad) = controls.iter().position(|s| s.dim() != n) {
            return Err(Error::DimensionMismatch(format!(
                "control {} is {}x{}, drift is {n}x{n}",
                bad + 1,
                controls[bad].dim(),
                controls[bad].dim()
            )));
        }
        Ok(Self { drift, controls })
    }

    /// Builds the generators from Hermitian Hamiltonians.
    pub fn from_hamiltonians(h0: &ComplexMatrix, hk: &[ComplexMatrix]) -> Result<Self> {
        let drift = SkewHermitian::from_hamiltonian(h0)?;
        let controls = hk.iter().map(SkewHermitian::from_hamiltonian).collect::<Result<Vec<_>>>()?;
        Self::new(drift, controls)
    }

    pub fn n(&self) -> usize {
        self.drift.dim()
    }

    pub fn m(&self) -> usize {
        self.controls.len()
    }

    pub fn drift(&self) -> &SkewHermitian {
        &self.drift
    }

    pub fn controls(&self) -> &[SkewHermitian] {
        &self.controls
    }

    /// `S_0 + sum_k u_k S_k`.
    pub fn generator(&self, u: &[f64]) -> ComplexMatrix {
        debug_assert_eq!(u.len(), self.m());
        let mut g = self.drift.matrix().clone();
        for (uk, sk) in u.iter().zip(&self.controls) {
            if *uk != 0.0 {
                g.zip_apply(sk.matrix(), |a, b| *a += b * *uk);
            }
        }
        g
    }
}

/// Encoded gate: the columns of `E` must be mapped onto the columns of `F`
/// up to a global phase.
#[derive(Clone, Debug)]
pub struct GateSpec {
    e: Isometry,
    f: Isometry,
    goal: Unitary,
}

impl GateSpec {
    /// Uses the base goal `X_F X_E^H` built from unitary completions.
    pub fn new(e: Isometry, f: Isometry) -> Result<Self> {
        Self::check_shapes(&e, &f)?;
        let goal = &f.completion() * &e.completion().adjoint();
        Ok(Self { e, f, goal })
    }

    /// Uses a caller-supplied goal, which must satisfy `goal * E = F`.
    pub fn with_goal(e: Isometry, f: Isometry, goal: Unitary) -> Result<Self> {
        Self::check_shapes(&e, &f)?;
        if goal.dim() != e.rows() {
            return Err(Error::DimensionMismatch(format!(
                "goal is {0}x{0}, gate lives in dimension {1}",
                goal.dim(),
                e.rows()
            )));
        }
        let defect = (goal.matrix() * e.matrix() - f.matrix()).norm();
        if defect > 1e-9 {
            return Err(Error::InvalidConfig(format!("goal does not map E onto F (residual {defect:e})")));
        }
        Ok(Self { e, f, goal })
    }

    fn check_shapes(e: &Isometry, f: &Isometry) -> Result<()> {
        if e.rows() != f.rows() || e.cols() != f.cols() {
            return Err(Error::DimensionMismatch(format!(
                "E is {}x{}, F is {}x{}",
                e.rows(),
                e.cols(),
                f.rows(),
                f.cols()
            )));
        }
        Ok(())
    }

    pub fn e(&self) -> &Isometry {
        &self.e
    }

    pub fn f(&self) -> &Isometry {
        &self.f
    }

    pub fn goal(&self) -> &Unitary {
        &self.goal
    }

    pub fn n(&self) -> usize {
        self.e.rows()
    }

    pub fn nbar(&self) -> usize {
        self.e.cols()
    }

    pub fn is_full(&self) -> bool {
        self.nbar() == self.n()
    }
}

/// `1 - (|trace(F^H X E)| / nbar)^2`. Not clamped; rounding may push it
/// slightly outside `[0, 1]`.
pub fn infidelity(x: &Unitary, spec: &GateSpec) -> f64 {
    let nbar = spec.nbar() as f64;
    let xe = x.matrix() * spec.e.matrix();
    let tr = trace_of_product(&spec.f.matrix().adjoint(), &xe);
    1.0 - (tr.norm() / nbar).powi(2)
}

/// Partial-trace Lyapunov function `2 nbar - 2 Re trace(E^H X E)`.
pub fn lyapunov_partial(xt: &Unitary, e: &Isometry) -> f64 {
    let nbar = e.cols() as f64;
    let xe = xt.matrix() * e.matrix();
    2.0 * nbar - 2.0 * trace_of_product(&e.matrix().adjoint(), &xe).re
}

/// `||W||_F^2` with `W` the Cayley image of `X`, equal to the sum of
/// `tan^2(theta_i / 2)` over the eigenphases.
pub fn lyapunov_full(xt: &Unitary) -> Result<f64> {
    let w = cayley_image(xt)?;
    Ok(w.norm_squared())
}

fn cayley_image(x: &Unitary) -> Result<ComplexMatrix> {
    cayley_forward(x).map(SkewHermitian::into_matrix)
}

/// `Z = X (X - I)(X + I)^-3` written through the Cayley image as
/// `W (I - W^2) / 4`.
pub fn z_from_cayley(w: &ComplexMatrix) -> ComplexMatrix {
    let n = w.nrows();
    let w2 = w * w;
    (w * (ComplexMatrix::identity(n, n) - w2)) * c(0.25, 0.0)
}

/// `w * 2K * Re trace(E^H S_k~ X~ E)`, the negative gain times the
/// directional derivative of [`lyapunov_partial`] along `S_k~ X~`.
pub fn feedback_partial(xt: &Unitary, st_k: &SkewHermitian, e: &Isometry, gain: f64, window: f64) -> f64 {
    let sxe = st_k.matrix() * (xt.matrix() * e.matrix());
    window * 2.0 * gain * trace_of_product(&e.matrix().adjoint(), &sxe).re
}

/// `4K * trace(Z(X~) S_k~)`, the negative gain times the directional
/// derivative of [`lyapunov_full`] along `S_k~ X~`.
pub fn feedback_full(xt: &Unitary, st_k: &SkewHermitian, gain: f64) -> Result<f64> {
    let z = z_from_cayley(&cayley_image(xt)?);
    Ok(4.0 * gain * trace_of_product(&z, st_k.matrix()).re)
}

/// `Re trace(Ybar^H S Y)` from the tracked images `Y = X E`, `Ybar = Xbar E`,
/// with `Ybar^H S` precomputed.
pub(crate) fn re_trace_rows(ybar_h_s: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    trace_of_product(ybar_h_s, y).re
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LyapunovKind {
    #[default]
    Partial,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    #[default]
    None,
    Hamming,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SaturationKind {
    #[default]
    Off,
    Smooth,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapingConfig {
    #[serde(default)]
    pub window: WindowKind,
    #[serde(default)]
    pub saturation: SaturationKind,
    /// Per-channel bound, used when saturation is on.
    #[serde(default = "default_u_max")]
    pub u_max: f64,
}

fn default_u_max() -> f64 {
    1.0
}

impl Default for ShapingConfig {
    fn default() -> Self {
        Self { window: WindowKind::None, saturation: SaturationKind::Off, u_max: default_u_max() }
    }
}

impl ShapingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.saturation == SaturationKind::Smooth && !(self.u_max > 0.0 && self.u_max.is_finite()) {
            return Err(Error::InvalidConfig("u_max must be positive and finite".into()));
        }
        Ok(())
    }

    pub fn window_at(&self, t: f64, t_final: f64) -> f64 {
        match self.window {
            WindowKind::None => 1.0,
            WindowKind::Hamming => window_hamming(t, t_final),
        }
    }

    /// Combines a reference value with an already windowed correction.
    pub fn combine(&self, reference: f64, correction: f64) -> Result<f64> {
        match self.saturation {
            SaturationKind::Off => Ok(reference + correction),
            SaturationKind::Smooth => saturation_policy(reference, correction, self.u_max),
        }
    }
}

/// Hamming-like window `(1 - cos(2 pi t / T_f)) / 2`.
pub fn window_hamming(t: f64, t_final: f64) -> f64 {
    if t <= 0.0 || t >= t_final {
        return 0.0;
    }
    0.5 * (1.0 - (2.0 * PI * t / t_final).cos())
}

/// Odd sigmoid with unit slope at the origin and asymptotes at +-1.
pub fn smooth_unit_sat(x: f64) -> f64 {
    (2.0 / PI) * (PI * x / 2.0).atan()
}

/// `u_star * phi(x / u_star)`.
pub fn smooth_sat(x: f64, u_star: f64) -> f64 {
    debug_assert!(u_star > 0.0);
    u_star * smooth_unit_sat(x / u_star)
}

/// Applies a correction on top of a reference value with asymmetric smooth
/// saturation towards `+u_max` and `-u_max`.
pub fn saturation_policy(reference: f64, correction: f64, u_max: f64) -> Result<f64> {
    if !(reference.abs() <= u_max) {
        return Err(Error::SeedOutOfBounds { channel: 0, value: reference, u_max });
    }
    let room = if correction >= 0.0 { u_max - reference } else { u_max + reference };
    let value = if room > 0.0 { reference + smooth_sat(correction, room) } else { reference };
    Ok(value.clamp(-u_max, u_max))
}
