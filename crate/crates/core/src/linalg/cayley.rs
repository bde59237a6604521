// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Cayley chart between U(n) (minus the eigenvalue -1 set) and u(n).
//!
//! Forward map `W = (X - I)(X + I)^-1`, inverse `X = -(W - I)^-1 (W + I)`.
//! Both are evaluated with a linear solve. The factors commute because they
//! are rational functions of the same matrix, so the solve can be applied
//! from the left.

use super::{eigphases, is_finite, solve, ComplexMatrix, SkewHermitian, Tolerances, Unitary};
use crate::error::{Error, Result};

pub fn cayley_forward(x: &Unitary) -> Result<SkewHermitian> {
    cayley_forward_with(x, &Tolerances::default())
}

pub fn cayley_forward_with(x: &Unitary, tol: &Tolerances) -> Result<SkewHermitian> {
    // For a normal matrix the distance from -1 to the spectrum is the
    // smallest singular value of X + I.
    let phases = eigphases(x);
    let distance = phases
        .phases
        .iter()
        .map(|&t| (num_complex::Complex64::from_polar(1.0, t) + 1.0).norm())
        .fold(f64::INFINITY, f64::min);
    if distance < tol.eig {
        return Err(Error::SingularAtMinusOne { distance, tol: tol.eig });
    }
    cayley_forward_raw(x.matrix())
        .map(SkewHermitian::new_unchecked)
        .ok_or(Error::SingularAtMinusOne { distance, tol: tol.eig })
}

pub fn cayley_inverse(w: &SkewHermitian) -> Unitary {
    Unitary::new_unchecked(cayley_inverse_raw(w.matrix()).expect("W - I is invertible for skew-Hermitian W"))
}

pub(crate) fn cayley_forward_raw(x: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = x.nrows();
    let id = ComplexMatrix::identity(n, n);
    let w = solve(x + &id, &(x - &id))?;
    is_finite(&w).then_some(w)
}

pub(crate) fn cayley_inverse_raw(w: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = w.nrows();
    let id = ComplexMatrix::identity(n, n);
    let x = solve(w - &id, &(-(w + &id)))?;
    is_finite(&x).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::super::testutil::*;
    use super::super::{c, exp_skew};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn identity_maps_to_zero() {
        let w = cayley_forward(&Unitary::identity(4)).unwrap();
        assert!(w.matrix().norm() < 1e-15);
        let x = cayley_inverse(&SkewHermitian::zeros(4));
        assert!((x.matrix() - ComplexMatrix::identity(4, 4)).norm() < 1e-15);
    }

    #[test]
    fn scalar_mobius_quarter_turn() {
        let x = Unitary::from_diagonal_phases(&[PI / 2.0, PI / 2.0]);
        let w = cayley_forward(&x).unwrap();
        for i in 0..2 {
            assert!((w.matrix()[(i, i)] - c(0.0, 1.0)).norm() < 1e-14);
        }
        let back = cayley_inverse(&w);
        assert!((back.matrix() - x.matrix()).norm() < 1e-14);
    }

    #[test]
    fn minus_one_is_rejected() {
        let x = Unitary::from_diagonal_phases(&[PI, 0.3]);
        assert!(matches!(cayley_forward(&x), Err(Error::SingularAtMinusOne { .. })));
    }

    #[test]
    fn roundtrip_from_unitary_side() {
        let mut r = rng(11);
        for _ in 0..20 {
            // eigenphases in (-pi/2, pi/2)
            let q = random_unitary(6, &mut r);
            let phases: Vec<f64> = (0..6).map(|i| -1.5 + 3.0 * (i as f64) / 5.0).collect();
            let d = Unitary::from_diagonal_phases(&phases);
            let x = &(&q * &d) * &q.adjoint();
            let w = cayley_forward(&x).unwrap();
            assert!((w.matrix() + w.matrix().adjoint()).norm() < 1e-12);
            let back = cayley_inverse(&w);
            assert!((back.matrix() - x.matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn roundtrip_from_algebra_side() {
        let mut r = rng(12);
        for _ in 0..20 {
            let w = random_skew(5, &mut r);
            let x = cayley_inverse(&w);
            assert!(x.unitarity_defect() < 1e-12);
            let back = cayley_forward(&x).unwrap();
            assert!((back.matrix() - w.matrix()).norm() < 1e-12 * w.matrix().norm().max(1.0));
        }
    }

    #[test]
    fn second_order_agreement_with_exponential() {
        // X(2W) and exp(2W) agree to third order in ||W||
        let mut r = rng(13);
        let w = random_skew(4, &mut r);
        let small = SkewHermitian::new_unchecked(w.matrix() * c(1e-3, 0.0));
        let x = cayley_inverse(&small);
        let e = exp_skew(&small, 2.0);
        assert!((x.matrix() - e.matrix()).norm() < 1e-7);
    }
}
