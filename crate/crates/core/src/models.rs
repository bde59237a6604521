// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Benchmark systems: two coupled transmons, a cavity dispersively coupled
//! to a transmon, and a chain of qubits with nearest-neighbour `zz`
//! coupling. Parameters are given as ordinary frequencies (`f = omega / 2 pi`)
//! and converted to angular frequencies by the builders. Every system has a
//! global-phase channel proportional to the identity as its last control.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::driver::{GoalStrategy, RigaConfig, Variant};
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, Isometry, Unitary};
use crate::problem::{GateSpec, LyapunovKind, SaturationKind, ShapingConfig, SystemModel, WindowKind};
use crate::seed::SeedConfig;

/// Truncated annihilation operator, `b|k> = sqrt(k)|k-1>`.
pub fn annihilation(levels: usize) -> ComplexMatrix {
    let mut b = ComplexMatrix::zeros(levels, levels);
    for k in 1..levels {
        b[(k - 1, k)] = c((k as f64).sqrt(), 0.0);
    }
    b
}

pub fn number(levels: usize) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&nalgebra::DVector::from_fn(levels, |k, _| c(k as f64, 0.0)))
}

fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

fn eye(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

/// Unit vector `|index>` in dimension `n`.
fn ket(n: usize, index: usize) -> nalgebra::DVector<crate::linalg::C64> {
    let mut v = nalgebra::DVector::zeros(n);
    v[index] = c(1.0, 0.0);
    v
}

/// Maximum column norm of the part of `X E` lying in the span of `forb`.
pub fn forbidden_population(x: &Unitary, e: &Isometry, forb: &Isometry) -> f64 {
    let b = forb.matrix().adjoint() * x.matrix() * e.matrix();
    b.column_iter().map(|col| col.norm()).fold(0.0, f64::max)
}

/// Smallest modulus on the diagonal of `F^H X E`.
pub fn good_population(x: &Unitary, spec: &GateSpec) -> f64 {
    let g = spec.f().matrix().adjoint() * x.matrix() * spec.e().matrix();
    (0..g.ncols()).map(|i| g[(i, i)].norm()).fold(f64::INFINITY, f64::min)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TransmonPairParams {
    pub freq1_ghz: f64,
    pub freq2_ghz: f64,
    pub anharm1_ghz: f64,
    pub anharm2_ghz: f64,
    pub coupling_ghz: f64,
    pub drive_ghz: f64,
    pub levels: usize,
}

impl Default for TransmonPairParams {
    fn default() -> Self {
        Self {
            freq1_ghz: 3.5,
            freq2_ghz: 3.9,
            anharm1_ghz: -0.225,
            anharm2_ghz: -0.225,
            coupling_ghz: 0.1,
            drive_ghz: 1.0,
            levels: 7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TransmonPair {
    pub system: SystemModel,
    pub cnot: GateSpec,
    pub state_prep: GateSpec,
    /// Levels where either transmon sits in its top level.
    pub forbidden: Isometry,
}

/// Two transmons in GHz and ns; basis index of `|i j>` is `i * levels + j`.
pub fn build_transmon_pair(p: &TransmonPairParams) -> Result<TransmonPair> {
    let nc = p.levels;
    if nc < 2 {
        return Err(Error::InvalidConfig("transmons need at least two levels".into()));
    }
    let w = 2.0 * PI;
    let b = annihilation(nc);
    let id = eye(nc);
    let n_op = number(nc);
    let x = &b + b.adjoint();
    let b1 = kron(&x, &id);
    let b2 = kron(&id, &x);
    let transmon =
        |freq: f64, anharm: f64| &n_op * c(w * freq, 0.0) + (&n_op * (&n_op - &id)) * c(0.5 * w * anharm, 0.0);
    let h0 = (&b1 * &b2) * c(w * p.coupling_ghz, 0.0)
        + kron(&transmon(p.freq1_ghz, p.anharm1_ghz), &id)
        + kron(&id, &transmon(p.freq2_ghz, p.anharm2_ghz));
    let beta = c(w * p.drive_ghz, 0.0);
    let controls = [&b1 * beta, &b2 * beta, kron(&id, &n_op) * beta, eye(nc * nc)];
    let system = SystemModel::from_hamiltonians(&h0, &controls)?;

    let n = nc * nc;
    let idx = |i: usize, j: usize| i * nc + j;
    let e = Isometry::from_basis_indices(n, &[idx(0, 0), idx(0, 1), idx(1, 0), idx(1, 1)])?;
    let f = Isometry::from_basis_indices(n, &[idx(0, 0), idx(0, 1), idx(1, 1), idx(1, 0)])?;
    let cnot = GateSpec::new(e, f)?;

    let e1 = Isometry::from_basis_indices(n, &[idx(0, 0)])?;
    let bell = (ket(n, idx(1, 0)) + ket(n, idx(0, 1))) * c(0.5f64.sqrt(), 0.0);
    let state_prep = GateSpec::new(e1, Isometry::new(ComplexMatrix::from_columns(&[bell]))?)?;

    let top: Vec<usize> = (0..n).filter(|&k| k / nc == nc - 1 || k % nc == nc - 1).collect();
    let forbidden = Isometry::from_basis_indices(n, &top)?;
    Ok(TransmonPair { system, cnot, state_prep, forbidden })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CavityTransmonParams {
    /// Bare frequencies, removed by the rotating frame.
    pub cavity_freq_mhz: f64,
    pub transmon_freq_mhz: f64,
    pub dispersive_mhz: f64,
    pub dispersive2_mhz: f64,
    pub anharm_mhz: f64,
    pub kerr_mhz: f64,
    pub cavity_levels: usize,
    pub transmon_levels: usize,
    /// Coherent amplitude of the logical cat states.
    pub cat_amplitude: f64,
}

impl Default for CavityTransmonParams {
    fn default() -> Self {
        Self {
            cavity_freq_mhz: 4452.6,
            transmon_freq_mhz: 5664.0,
            dispersive_mhz: 2.194,
            dispersive2_mhz: 0.019,
            anharm_mhz: -236.0,
            kerr_mhz: -0.0037,
            cavity_levels: 20,
            transmon_levels: 4,
            cat_amplitude: 2.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CavityTransmon {
    pub system: SystemModel,
    pub hadamard: GateSpec,
    pub forbidden: Isometry,
}

/// Cat state with Fock support `{offset, offset + 4, ...}` below `levels`,
/// coefficients `alpha^k / sqrt(k!)`, renormalized after truncation.
pub fn cat_state(levels: usize, alpha: f64, offset: usize) -> nalgebra::DVector<crate::linalg::C64> {
    let mut v = nalgebra::DVector::zeros(levels);
    // alpha^k / sqrt(k!) built incrementally
    let mut coeff = 1.0;
    for k in 0..levels {
        if k > 0 {
            coeff *= alpha / (k as f64).sqrt();
        }
        if k >= offset && (k - offset).is_multiple_of(4) {
            v[k] = c(coeff, 0.0);
        }
    }
    let norm = v.norm();
    if norm > 0.0 {
        v /= c(norm, 0.0);
    }
    v
}

/// Cavity (MHz, microseconds) in the frame rotating with both bare
/// frequencies; basis index of `|k>|j>` is `k * transmon_levels + j`.
pub fn build_cavity_transmon(p: &CavityTransmonParams) -> Result<CavityTransmon> {
    let (nc, nt) = (p.cavity_levels, p.transmon_levels);
    if nc < 3 || nt < 2 {
        return Err(Error::InvalidConfig("need at least three cavity and two transmon levels".into()));
    }
    let w = 2.0 * PI;
    let a = annihilation(nc);
    let b = annihilation(nt);
    let (ic, it) = (eye(nc), eye(nt));
    let a2 = a.adjoint() * a.adjoint() * &a * &a;
    let b2 = b.adjoint() * b.adjoint() * &b * &b;
    let h0 = kron(&a2, &it) * c(0.5 * w * p.kerr_mhz, 0.0)
        + kron(&ic, &b2) * c(0.5 * w * p.anharm_mhz, 0.0)
        + kron(&number(nc), &number(nt)) * c(w * p.dispersive_mhz, 0.0)
        + kron(&a2, &b2) * c(0.5 * w * p.dispersive2_mhz, 0.0);
    let minus_i = c(0.0, -1.0);
    let controls = [
        kron(&(&a + a.adjoint()), &it),
        kron(&((&a - a.adjoint()) * minus_i), &it),
        kron(&ic, &(&b + b.adjoint())),
        kron(&ic, &((&b - b.adjoint()) * minus_i)),
        eye(nc * nt),
    ];
    let system = SystemModel::from_hamiltonians(&h0, &controls)?;

    let n = nc * nt;
    let e = Isometry::from_basis_indices(n, &[0, 1])?;
    let g = ket(nt, 0);
    let f1 = kron(
        &ComplexMatrix::from_columns(&[cat_state(nc, p.cat_amplitude, 0)]),
        &ComplexMatrix::from_columns(std::slice::from_ref(&g)),
    );
    let f2 =
        kron(&ComplexMatrix::from_columns(&[cat_state(nc, p.cat_amplitude, 2)]), &ComplexMatrix::from_columns(&[g]));
    let h = hadamard();
    let mut fm = ComplexMatrix::zeros(n, 2);
    for i in 0..2 {
        let col = f1.column(0) * h[(0, i)] + f2.column(0) * h[(1, i)];
        fm.set_column(i, &col);
    }
    let hadamard = GateSpec::new(e, Isometry::new(fm)?)?;
    let top: Vec<usize> = (0..n).filter(|&k| k / nt == nc - 1 || k % nt == nt - 1).collect();
    let forbidden = Isometry::from_basis_indices(n, &top)?;
    Ok(CavityTransmon { system, hadamard, forbidden })
}

pub fn hadamard() -> ComplexMatrix {
    let s = c(0.5f64.sqrt(), 0.0);
    ComplexMatrix::from_row_slice(2, 2, &[s, s, s, -s])
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QubitChainParams {
    pub qubits: usize,
    pub zz_ghz: f64,
    pub drive_ghz: f64,
    pub phase_ghz: f64,
}

impl Default for QubitChainParams {
    fn default() -> Self {
        Self::new(3)
    }
}

impl QubitChainParams {
    pub fn new(qubits: usize) -> Self {
        Self { qubits, zz_ghz: 0.1, drive_ghz: 0.1, phase_ghz: 0.1 }
    }
}

/// Operator `op` on qubit `k` (0-based, most significant first) of `n`.
pub fn on_qubit(op: &ComplexMatrix, k: usize, n: usize) -> ComplexMatrix {
    let left = eye(1 << k);
    let right = eye(1 << (n - k - 1));
    kron(&kron(&left, op), &right)
}

/// Qubit chain in GHz and ns. Controls are `x_1, y_1, ..., x_N, y_N` and the
/// global phase; the target is the Hadamard gate on every qubit.
pub fn build_qubit_chain(p: &QubitChainParams) -> Result<(SystemModel, GateSpec)> {
    let nq = p.qubits;
    if !(2..=12).contains(&nq) {
        return Err(Error::InvalidConfig("the chain builder supports 2 to 12 qubits".into()));
    }
    let n = 1usize << nq;
    let w = 2.0 * PI;
    let z = pauli_z();
    let mut h0 = ComplexMatrix::zeros(n, n);
    for s in 0..nq - 1 {
        h0 += on_qubit(&z, s, nq) * on_qubit(&z, s + 1, nq);
    }
    h0 *= c(w * p.zz_ghz, 0.0);
    let drive = c(w * p.drive_ghz, 0.0);
    let mut controls = Vec::with_capacity(2 * nq + 1);
    for k in 0..nq {
        controls.push(on_qubit(&pauli_x(), k, nq) * drive);
        controls.push(on_qubit(&pauli_y(), k, nq) * drive);
    }
    controls.push(eye(n) * c(w * p.phase_ghz, 0.0));
    let system = SystemModel::from_hamiltonians(&h0, &controls)?;

    let mut target = ComplexMatrix::identity(1, 1);
    for _ in 0..nq {
        target = kron(&target, &hadamard());
    }
    let e = Isometry::leading_columns(n, n);
    let f = Isometry::new(target.clone())?;
    let spec = GateSpec::with_goal(e, f, Unitary::new(target)?)?;
    Ok((system, spec))
}

const CHAIN_GAIN: [f64; 10] = [10.0, 10.0, 10.0, 2.0, 2.0, 1.0, 0.5, 0.25, 0.125, 0.0625];
const CHAIN_HARMONICS: [usize; 10] = [10, 10, 11, 10, 14, 14, 14, 14, 14, 14];

/// Published run settings for the chain with `qubits` in `2..=10`.
pub fn chain_config(qubits: usize, rng_seed: u64) -> Result<RigaConfig> {
    if !(2..=10).contains(&qubits) {
        return Err(Error::InvalidConfig("published chain settings cover 2 to 10 qubits".into()));
    }
    let p = QubitChainParams::new(qubits);
    let t_final = 2.0 * qubits as f64;
    let harmonics = CHAIN_HARMONICS[qubits - 1];
    Ok(RigaConfig {
        gain: CHAIN_GAIN[qubits - 1] / (2.0 * PI * p.drive_ghz),
        t_final,
        n_sim: 20 * qubits,
        target_infidelity: 1e-3,
        max_steps: 1000,
        variant: Variant::Smooth,
        lyapunov: LyapunovKind::Full,
        strategy: GoalStrategy::OptimizeSaturate,
        shaping: ShapingConfig { window: WindowKind::Hamming, saturation: SaturationKind::Smooth, u_max: 5.0 },
        seed: SeedConfig {
            harmonics,
            period: PI * t_final,
            amplitude: 2.0 / harmonics as f64,
            rng_seed,
            apply_window: true,
        },
        seed_coefficients: None,
        grape_step: None,
        omega_target: None,
    })
}

/// Published run settings for the transmon pair.
pub fn transmon_config(p: &TransmonPairParams, rng_seed: u64) -> RigaConfig {
    let omega1 = 2.0 * PI * p.freq1_ghz;
    let harmonics = 3;
    RigaConfig {
        gain: 1.0 / omega1,
        t_final: 10.0,
        n_sim: 4000,
        target_infidelity: 1e-3,
        max_steps: 1000,
        variant: Variant::Smooth,
        lyapunov: LyapunovKind::Partial,
        strategy: GoalStrategy::OptimizeSaturate,
        shaping: ShapingConfig { window: WindowKind::None, saturation: SaturationKind::Smooth, u_max: 0.5 },
        seed: SeedConfig {
            harmonics,
            period: 19.0 * harmonics as f64 * 2.0 * PI / omega1,
            amplitude: 0.2 / harmonics as f64,
            rng_seed,
            apply_window: false,
        },
        seed_coefficients: None,
        grape_step: None,
        omega_target: None,
    }
}

/// Published run settings for the cavity-transmon system.
pub fn cavity_config(rng_seed: u64) -> RigaConfig {
    let gain = 0.5e-6;
    let t_final = 1.1;
    let harmonics = 3;
    RigaConfig {
        gain,
        t_final,
        n_sim: 500,
        target_infidelity: 1e-3,
        max_steps: 1000,
        variant: Variant::Smooth,
        lyapunov: LyapunovKind::Partial,
        strategy: GoalStrategy::OptimizeSaturate,
        shaping: ShapingConfig { window: WindowKind::Hamming, saturation: SaturationKind::Smooth, u_max: 5.0 },
        seed: SeedConfig {
            harmonics,
            period: harmonics as f64 * t_final / (2.0 * PI),
            amplitude: gain / 2.0,
            rng_seed,
            apply_window: true,
        },
        seed_coefficients: None,
        grape_step: None,
        omega_target: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::testutil::*;
    use crate::linalg::{unitarity_defect, SkewHermitian};

    fn skew_defect(s: &SkewHermitian) -> f64 {
        (s.matrix() + s.matrix().adjoint()).norm()
    }

    #[test]
    fn ladder_truncation() {
        let b = annihilation(2);
        assert_eq!(b[(0, 1)], c(1.0, 0.0));
        assert_eq!(b.iter().filter(|z| z.norm() > 0.0).count(), 1);
        assert_eq!(
            number(2),
            ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]))
        );
        for nc in [2, 3, 6] {
            let b = annihilation(nc);
            let comm = &b * b.adjoint() - b.adjoint() * &b;
            let mut want = vec![c(1.0, 0.0); nc];
            want[nc - 1] = c(1.0 - nc as f64, 0.0);
            let want = ComplexMatrix::from_diagonal(&nalgebra::DVector::from_vec(want));
            assert!((comm - want).norm() < 1e-12);
            assert!((b.adjoint() * &b - number(nc)).norm() < 1e-12);
        }
    }

    #[test]
    fn transmon_pair_structure() {
        let p = TransmonPairParams { levels: 3, ..Default::default() };
        let tp = build_transmon_pair(&p).unwrap();
        assert_eq!(tp.system.n(), 9);
        assert_eq!(tp.system.m(), 4);
        assert!(skew_defect(tp.system.drift()) < 1e-12);
        assert!(tp.system.controls().iter().all(|s| skew_defect(s) < 1e-12));
        // F^H P E = I for the intended permutation |i j> -> |i, i xor j>
        let mut perm = ComplexMatrix::zeros(9, 9);
        for i in 0..3 {
            for j in 0..3 {
                let jj = if i == 1 && j < 2 { 1 - j } else { j };
                perm[(i * 3 + jj, i * 3 + j)] = c(1.0, 0.0);
            }
        }
        let g = tp.cnot.f().matrix().adjoint() * perm * tp.cnot.e().matrix();
        assert!((g - ComplexMatrix::identity(4, 4)).norm() < 1e-15);
        assert_eq!(tp.forbidden.cols(), 2 * 3 - 1);
        assert_eq!(tp.state_prep.nbar(), 1);
        assert!((tp.state_prep.f().matrix().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subsystem_operators_commute() {
        let mut r = rng(1);
        let a = random_matrix(3, 3, &mut r);
        let b = random_matrix(4, 4, &mut r);
        let on1 = kron(&a, &eye(4));
        let on2 = kron(&eye(3), &b);
        assert!((&on1 * &on2 - &on2 * &on1).norm() < 1e-12);
        let x = on_qubit(&pauli_x(), 0, 3);
        let y = on_qubit(&pauli_y(), 2, 3);
        assert_eq!(x.nrows(), 8);
        assert!((&x * &y - &y * &x).norm() < 1e-15);
    }

    #[test]
    fn cavity_structure() {
        let p = CavityTransmonParams { cavity_levels: 10, transmon_levels: 3, ..Default::default() };
        let ct = build_cavity_transmon(&p).unwrap();
        assert_eq!(ct.system.n(), 30);
        assert_eq!(ct.system.m(), 5);
        assert!(skew_defect(ct.system.drift()) < 1e-12);
        let f = ct.hadamard.f().matrix();
        assert!((f.adjoint() * f - ComplexMatrix::identity(2, 2)).norm() < 1e-10);
        let h = hadamard();
        assert!((&h * &h - ComplexMatrix::identity(2, 2)).norm() < 1e-15);
        for nc in [5, 9, 20] {
            let plus = cat_state(nc, 2.0, 0);
            let minus = cat_state(nc, 2.0, 2);
            assert_eq!(plus.dotc(&minus), c(0.0, 0.0));
            assert!((plus.norm() - 1.0).abs() < 1e-14);
        }
        // coefficient ratio between |4> and |0>: alpha^4 / sqrt(4!)
        let v = cat_state(20, 1.5, 0);
        assert!((v[4].re / v[0].re - 1.5f64.powi(4) / 24f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn chain_structure() {
        let (sys, spec) = build_qubit_chain(&QubitChainParams::new(2)).unwrap();
        assert_eq!(sys.m(), 5);
        assert!(spec.is_full());
        let j0 = 2.0 * PI * 0.1;
        let h0 = sys.drift().matrix() * c(0.0, 1.0);
        let mut d: Vec<f64> = (0..4).map(|i| h0[(i, i)].re).collect();
        d.sort_by(f64::total_cmp);
        assert!((h0.norm_squared() - 4.0 * j0 * j0).abs() < 1e-12);
        for (got, want) in d.iter().zip([-j0, -j0, j0, j0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let (_, spec3) = build_qubit_chain(&QubitChainParams::new(3)).unwrap();
        let g = spec3.goal().matrix();
        assert!((g * g - ComplexMatrix::identity(8, 8)).norm() < 1e-12);
        assert!((g - g.adjoint()).norm() < 1e-15);
    }

    #[test]
    fn populations() {
        let tp = build_transmon_pair(&TransmonPairParams { levels: 3, ..Default::default() }).unwrap();
        let id = Unitary::identity(9);
        assert_eq!(forbidden_population(&id, tp.cnot.e(), &tp.forbidden), 0.0);
        // swap |00> with |22>
        let mut m = ComplexMatrix::identity(9, 9);
        m.swap_columns(0, 8);
        let x = Unitary::new(m).unwrap();
        assert_eq!(forbidden_population(&x, tp.cnot.e(), &tp.forbidden), 1.0);

        let xr = random_unitary(9, &mut rng(2));
        let got = forbidden_population(&xr, tp.cnot.e(), &tp.forbidden);
        let xe = xr.matrix() * tp.cnot.e().matrix();
        let mut want: f64 = 0.0;
        for j in 0..4 {
            let s: f64 = (0..9).filter(|&k| k / 3 == 2 || k % 3 == 2).map(|k| xe[(k, j)].norm_sqr()).sum();
            want = want.max(s.sqrt());
        }
        assert!((got - want).abs() < 1e-14 && (0.0..=1.0).contains(&got));

        // X with X E = F
        let goal = tp.cnot.goal().clone();
        assert!((good_population(&goal, &tp.cnot) - 1.0).abs() < 1e-15);
        let g = tp.cnot.f().matrix().adjoint() * xr.matrix() * tp.cnot.e().matrix();
        let want = (0..4).map(|i| g[(i, i)].norm()).fold(f64::INFINITY, f64::min);
        assert_eq!(good_population(&xr, &tp.cnot), want);
        // X moving the encoded space onto the forbidden levels
        let mut m = ComplexMatrix::identity(9, 9);
        for (a, b) in [(0, 2), (1, 5), (3, 6), (4, 8)] {
            m.swap_columns(a, b);
        }
        assert_eq!(good_population(&Unitary::new(m).unwrap(), &tp.cnot), 0.0);
        assert!(unitarity_defect(goal.matrix()) < 1e-12);
    }

    #[test]
    fn published_settings() {
        let cfg = chain_config(3, 0).unwrap();
        assert_eq!(cfg.n_sim, 60);
        assert!((cfg.t_final - 6.0).abs() < 1e-15);
        assert!((cfg.gain - 10.0 / (2.0 * PI * 0.1)).abs() < 1e-12);
        assert_eq!(cfg.seed.harmonics, 11);
        assert!(cfg.validate().is_ok());
        assert!(transmon_config(&TransmonPairParams::default(), 0).validate().is_ok());
        assert!(cavity_config(0).validate().is_ok());
    }
}
