// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential by diagonal Padé approximation with scaling and
//! squaring. Degree and scaling follow the 1-norm thresholds of Higham's
//! 2005 algorithm (degrees 3, 5, 7, 9, 13).

use super::{c, solve, ComplexMatrix, SkewHermitian, Unitary};

const THETA: [(usize, f64); 5] = [
    (3, 1.495585217958292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
    (13, 5.371920351148152e0),
];

const B3: [f64; 4] = [120., 60., 12., 1.];
const B5: [f64; 6] = [30240., 15120., 3360., 420., 30., 1.];
const B7: [f64; 8] = [17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.];
const B9: [f64; 10] =
    [17643225600., 8821612800., 2075673600., 302702400., 30270240., 2162160., 110880., 3960., 90., 1.];
const B13: [f64; 14] = [
    64764752532480000.,
    32382376266240000.,
    7771770303897600.,
    1187353796428800.,
    129060195264000.,
    10559470521600.,
    670442572800.,
    33522128640.,
    1323241920.,
    40840800.,
    960960.,
    16380.,
    182.,
    1.,
];

fn one_norm(a: &ComplexMatrix) -> f64 {
    a.column_iter().map(|col| col.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

fn scaled(a: &ComplexMatrix, s: f64) -> ComplexMatrix {
    a * c(s, 0.0)
}

/// Odd/even parts `(U, V)` of the degree-`m` Padé numerator for m <= 9.
fn pade_low(a: &ComplexMatrix, b: &[f64]) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.nrows();
    let id = ComplexMatrix::identity(n, n);
    let a2 = a * a;
    let mut u = scaled(&id, b[1]);
    let mut v = scaled(&id, b[0]);
    let mut power = id;
    let m = b.len() - 1;
    for j in 1..=m / 2 {
        power = &power * &a2;
        u += scaled(&power, b[2 * j + 1]);
        v += scaled(&power, b[2 * j]);
    }
    (a * u, v)
}

fn pade13(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.nrows();
    let id = ComplexMatrix::identity(n, n);
    let b = &B13;
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = scaled(&a6, b[13]) + scaled(&a4, b[11]) + scaled(&a2, b[9]);
    let u = a * (&a6 * inner_u + scaled(&a6, b[7]) + scaled(&a4, b[5]) + scaled(&a2, b[3]) + scaled(&id, b[1]));
    let inner_v = scaled(&a6, b[12]) + scaled(&a4, b[10]) + scaled(&a2, b[8]);
    let v = &a6 * inner_v + scaled(&a6, b[6]) + scaled(&a4, b[4]) + scaled(&a2, b[2]) + scaled(&id, b[0]);
    (u, v)
}

/// General complex matrix exponential.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let norm = one_norm(a);
    if norm == 0.0 {
        return ComplexMatrix::identity(n, n);
    }
    for &(m, theta) in &THETA[..4] {
        if norm <= theta {
            let b: &[f64] = match m {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            let (u, v) = pade_low(a, b);
            return rational(u, v);
        }
    }
    let theta13 = THETA[4].1;
    let s = (norm / theta13).log2().ceil().max(0.0) as i32;
    let a_scaled = scaled(a, 2f64.powi(-s));
    let (u, v) = pade13(&a_scaled);
    let mut r = rational(u, v);
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

fn rational(u: ComplexMatrix, v: ComplexMatrix) -> ComplexMatrix {
    let num = &v + &u;
    solve(v - u, &num).expect("Padé denominator is nonsingular within the norm thresholds")
}

/// `exp(dt * A)` for skew-Hermitian `A`. The diagonal Padé approximant of a
/// skew-Hermitian argument is unitary, so no re-projection is applied.
pub fn exp_skew(a: &SkewHermitian, dt: f64) -> Unitary {
    Unitary::new_unchecked(expm(&scaled(a.matrix(), dt)))
}
