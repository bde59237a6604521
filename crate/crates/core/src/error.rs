// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix has an eigenvalue within {tol:e} of -1 (distance {distance:e})")]
    SingularAtMinusOne { distance: f64, tol: f64 },

    #[error("matrix is rank deficient: smallest singular value {sigma_min:e} <= {tol:e}")]
    RankDeficient { sigma_min: f64, tol: f64 },

    #[error("matrix is not unitary: ||X^H X - I||_F = {defect:e} exceeds {tol:e}")]
    NotUnitary { defect: f64, tol: f64 },

    #[error("matrix is not skew-Hermitian: ||A + A^H||_F = {defect:e} exceeds {tol:e}")]
    NotSkewHermitian { defect: f64, tol: f64 },

    #[error("columns are not orthonormal: ||E^H E - I||_F = {defect:e} exceeds {tol:e}")]
    NotIsometry { defect: f64, tol: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("seed sample {value} on channel {channel} exceeds the bound {u_max}")]
    SeedOutOfBounds { channel: usize, value: f64, u_max: f64 },

    #[error("Cayley chart left its domain at step {step}")]
    CayleyBlowup { step: usize },

    #[error("no goal on the path is within the switch radius (previous index {previous})")]
    NoReachableGoal { previous: usize },

    #[error("no convergence after {steps} steps (last infidelity {infidelity:e})")]
    NonConvergence { steps: usize, infidelity: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
