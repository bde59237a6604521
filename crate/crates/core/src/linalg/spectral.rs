// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Eigenphase manipulation of unitary matrices and the unitary projection.

use std::f64::consts::PI;

use nalgebra::linalg::SymmetricEigen;

use super::{ComplexMatrix, Tolerances, Unitary, C64};
use crate::error::{Error, Result};

/// `R = U^H diag(exp(i theta)) U` with every phase in `(-pi, pi]`.
#[derive(Clone, Debug)]
pub struct EigenPhases {
    pub vectors: Unitary,
    pub phases: Vec<f64>,
}

impl EigenPhases {
    /// Rebuilds `U^H diag(exp(i f(theta))) U`.
    pub fn rebuild(&self, f: impl Fn(f64) -> f64) -> Unitary {
        let u = self.vectors.matrix();
        let n = u.nrows();
        let mut scaled_rows = u.clone();
        for i in 0..n {
            let z = C64::from_polar(1.0, f(self.phases[i]));
            for j in 0..n {
                scaled_rows[(i, j)] *= z;
            }
        }
        Unitary::new_unchecked(u.adjoint() * scaled_rows)
    }
}

pub(crate) fn principal_phase(z: C64) -> f64 {
    let t = z.im.atan2(z.re);
    if t <= -PI {
        PI
    } else {
        t
    }
}

/// Spectral decomposition of a unitary matrix.
///
/// The matrix is rotated by a global phase that keeps its spectrum away
/// from `-1`, mapped to the Hermitian matrix `i Cayley(e^{i psi} R)` and
/// diagonalized there, which handles repeated eigenvalues. Phases are then
/// read off as `arg(v^H R v)`.
pub fn eigphases(r: &Unitary) -> EigenPhases {
    let n = r.dim();
    let id = ComplexMatrix::identity(n, n);
    let rotated = |psi: f64| r.matrix() * C64::from_polar(1.0, psi);
    // some rotation leaves a spectral gap of at least pi/n around -1
    let mut best = (0.0, -1.0);
    for j in 0..(4 * n).max(4) {
        let psi = PI * j as f64 / (2 * n).max(2) as f64;
        let sigma = (rotated(psi) + &id).singular_values().min();
        if sigma > best.1 {
            best = (psi, sigma);
        }
        if sigma >= 0.5 {
            break;
        }
    }
    let x = rotated(best.0);
    let w = super::solve(&x + &id, &(&x - &id)).expect("rotation keeps X + I invertible");
    let mut h = w * C64::new(0.0, 1.0);
    // remove the rounding asymmetry before the Hermitian solver
    h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let v = eig.eigenvectors;
    let phases = (0..n)
        .map(|i| {
            let col = v.column(i);
            principal_phase((col.adjoint() * r.matrix() * col)[(0, 0)])
        })
        .collect();
    EigenPhases { vectors: Unitary::new_unchecked(v.adjoint()), phases }
}

/// Clamps every eigenphase into `[-theta_max, theta_max]`, keeping the
/// eigenvectors.
pub fn saturate_eigenphases(r: &Unitary, theta_max: f64) -> Unitary {
    assert!(theta_max > 0.0 && theta_max <= PI, "theta_max must lie in (0, pi]");
    let eig = eigphases(r);
    if eig.phases.iter().all(|t| t.abs() <= theta_max) {
        return r.clone();
    }
    eig.rebuild(|t| t.clamp(-theta_max, theta_max))
}

/// Principal `p`-th root: phases divided by `p`, so they land in
/// `(-pi/p, pi/p]`.
pub fn pth_root(r: &Unitary, p: u32) -> Unitary {
    assert!(p >= 1, "root order must be positive");
    if p == 1 {
        return r.clone();
    }
    let pf = f64::from(p);
    eigphases(r).rebuild(|t| t / pf)
}

pub fn unitary_projection(x: &ComplexMatrix) -> Result<Unitary> {
    unitary_projection_with(x, &Tolerances::default())
}

/// Closest unitary matrix in Frobenius norm, `U V^H` from `X = U S V^H`.
pub fn unitary_projection_with(x: &ComplexMatrix, tol: &Tolerances) -> Result<Unitary> {
    if x.nrows() != x.ncols() || x.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "unitary projection needs a square matrix, got {}x{}",
            x.nrows(),
            x.ncols()
        )));
    }
    let svd = x.clone().svd(true, true);
    let sigma_min = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    if !(sigma_min > tol.svd) {
        return Err(Error::RankDeficient { sigma_min, tol: tol.svd });
    }
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^H");
    Ok(Unitary::new_unchecked(u * v_t))
}
