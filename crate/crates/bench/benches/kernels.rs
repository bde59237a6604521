// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use riga_bench::chain_fixture;
use riga_core::driver::run_riga;
use riga_core::integrate::propagate_smooth_open;
use riga_core::linalg::{exp_skew, expm};
use riga_core::{ComplexMatrix, SkewHermitian, TimeGrid, Unitary, C64};

fn random_skew(n: usize, seed: u64) -> SkewHermitian {
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let a = ComplexMatrix::from_fn(n, n, |_, _| C64::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5));
    SkewHermitian::new((&a - a.adjoint()) * C64::new(0.5, 0.0)).expect("skew by construction")
}

fn bench_expm(c: &mut Criterion) {
    let mut g = c.benchmark_group("expm");
    for n in [4, 16, 64] {
        let a = random_skew(n, n as u64);
        g.bench_with_input(BenchmarkId::new("general", n), &a, |b, a| b.iter(|| expm(black_box(a.matrix()))));
        g.bench_with_input(BenchmarkId::new("skew", n), &a, |b, a| b.iter(|| exp_skew(black_box(a), 0.1)));
    }
    g.finish();
}

fn bench_cayley_rk4(c: &mut Criterion) {
    let mut g = c.benchmark_group("cayley_rk4");
    for qubits in [2, 4, 6] {
        let (sys, _, cfg) = chain_fixture(qubits, 0);
        let grid = TimeGrid::new(cfg.t_final, 10).expect("valid grid");
        let pulses =
            riga_core::seed::generate_seed(&cfg.seed, sys.m(), &grid, riga_core::PulseMode::Smooth).expect("seed");
        let id = Unitary::identity(sys.n());
        g.bench_function(BenchmarkId::new("ten_steps", 1usize << qubits), |b| {
            b.iter(|| propagate_smooth_open(&sys, black_box(&pulses), &grid, &id).expect("in chart"))
        });
    }
    g.finish();
}

fn bench_riga_step(c: &mut Criterion) {
    let (sys, spec, cfg) = chain_fixture(2, 1);
    c.bench_function("riga_step/chain_2", |b| b.iter(|| run_riga(&sys, &spec, black_box(&cfg)).expect("valid run")));
}

criterion_group!(benches, bench_expm, bench_cayley_rk4, bench_riga_step);
criterion_main!(benches);
