// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Benchmark fixtures shared by the criterion targets.

use riga_core::models::{build_qubit_chain, chain_config, QubitChainParams};
use riga_core::{GateSpec, RigaConfig, SystemModel};

/// Qubit chain with its published settings, capped at `max_steps` passes.
pub fn chain_fixture(qubits: usize, max_steps: usize) -> (SystemModel, GateSpec, RigaConfig) {
    let (sys, spec) = build_qubit_chain(&QubitChainParams::new(qubits)).expect("valid chain size");
    let mut cfg = chain_config(qubits, 1).expect("published settings exist");
    cfg.max_steps = max_steps;
    (sys, spec, cfg)
}
