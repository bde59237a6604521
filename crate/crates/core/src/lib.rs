// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Lyapunov-based iterative synthesis of open-loop pulses for encoded
//! quantum gates, with a first-order GRAPE baseline and geometric
//! integrators on the unitary group.

pub mod driver;
pub mod error;
pub mod goal;
pub mod integrate;
pub mod linalg;
pub mod models;
pub mod problem;
pub mod pulse;
pub mod seed;
pub mod spectrum;

pub use driver::{GoalStrategy, RigaConfig, RunReport, StepRecord, Termination, Variant};
pub use error::{Error, Result};
pub use integrate::{FeedbackConfig, PiecewiseMode, Trajectory};
pub use linalg::{ComplexMatrix, Isometry, SkewHermitian, Tolerances, Unitary, C64};
pub use problem::{GateSpec, LyapunovKind, SaturationKind, ShapingConfig, SystemModel, WindowKind};
pub use pulse::{PulseMode, PulseSet, TimeGrid};
pub use seed::{SeedCoefficients, SeedConfig};
pub use spectrum::{NyquistReport, Spectrum};
