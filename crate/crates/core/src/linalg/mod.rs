// Copyright 2026 The riga-rs Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrix kernel.
//!
//! Three validated wrappers sit on top of [`ComplexMatrix`]: [`Unitary`],
//! [`SkewHermitian`] (elements of the Lie algebra u(n)) and [`Isometry`]
//! (tall matrices with orthonormal columns). Hot loops in the integrators
//! work on raw matrices and only wrap results at the boundary.

mod cayley;
mod expm;
mod spectral;

pub use cayley::{cayley_forward, cayley_forward_with, cayley_inverse};
pub use expm::{exp_skew, expm};
pub use spectral::{
    eigphases, pth_root, saturate_eigenphases, unitary_projection, unitary_projection_with, EigenPhases,
};

pub(crate) use cayley::{cayley_forward_raw, cayley_inverse_raw};

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::Mul;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;

/// Numerical tolerances shared by the kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Bound on `||X^H X - I||_F` for a matrix to count as unitary.
    pub unitarity: f64,
    /// Minimum distance of an eigenvalue from -1 for the Cayley chart.
    pub eig: f64,
    /// Smallest admissible singular value in projections.
    pub svd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { unitarity: 1e-9, eig: 1e-8, svd: 1e-12 }
    }
}

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// `||X^H X - I||_F`.
pub fn unitarity_defect(m: &ComplexMatrix) -> f64 {
    let n = m.ncols();
    (m.adjoint() * m - ComplexMatrix::identity(n, n)).norm()
}

/// `trace(A B)` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Solves `A X = B` by LU with partial pivoting.
pub(crate) fn solve(a: ComplexMatrix, b: &ComplexMatrix) -> Option<ComplexMatrix> {
    a.lu().solve(b)
}

/// Frobenius norm of `(X1 - X2) E`.
pub fn partial_distance(x1: &Unitary, x2: &Unitary, e: &Isometry) -> Result<f64> {
    if x1.dim() != x2.dim() || x1.dim() != e.rows() {
        return Err(Error::DimensionMismatch(format!(
            "partial distance between {0}x{0} and {1}x{1} with E of {2} rows",
            x1.dim(),
            x2.dim(),
            e.rows()
        )));
    }
    Ok(((x1.matrix() - x2.matrix()) * e.matrix()).norm())
}

fn check_square(m: &ComplexMatrix) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "expected a non-empty square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if !is_finite(m) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Unitary(ComplexMatrix);

impl Unitary {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, Tolerances::default().unitarity)
    }

    pub fn with_tolerance(m: ComplexMatrix, tol: f64) -> Result<Self> {
        check_square(&m)?;
        let defect = unitarity_defect(&m);
        if defect > tol {
            return Err(Error::NotUnitary { defect, tol });
        }
        Ok(Self(m))
    }

    /// Wraps a matrix the caller knows to be unitary.
    pub fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n, n))
    }

    pub fn from_diagonal_phases(phases: &[f64]) -> Self {
        let n = phases.len();
        Self(ComplexMatrix::from_fn(
            n,
            n,
            |i, j| {
                if i == j {
                    C64::from_polar(1.0, phases[i])
                } else {
                    C64::new(0.0, 0.0)
                }
            },
        ))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale_phase(&self, phi: f64) -> Self {
        Self(&self.0 * C64::from_polar(1.0, phi))
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.0)
    }
}

impl Mul for &Unitary {
    type Output = Unitary;
    fn mul(self, rhs: &Unitary) -> Unitary {
        Unitary(&self.0 * &rhs.0)
    }
}

impl Mul for Unitary {
    type Output = Unitary;
    fn mul(self, rhs: Unitary) -> Unitary {
        Unitary(self.0 * rhs.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkewHermitian(ComplexMatrix);

impl SkewHermitian {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, 1e-10)
    }

    pub fn with_tolerance(m: ComplexMatrix, tol: f64) -> Result<Self> {
        check_square(&m)?;
        let defect = (&m + m.adjoint()).norm();
        if defect > tol * m.norm().max(1.0) {
            return Err(Error::NotSkewHermitian { defect, tol });
        }
        Ok(Self(m))
    }

    pub fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    /// `-i H` for a Hermitian `H`.
    pub fn from_hamiltonian(h: &ComplexMatrix) -> Result<Self> {
        Self::new(h * c(0.0, -1.0))
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// Conjugation `U^H A U`, which stays in u(n).
    pub fn conjugate_by(&self, u: &Unitary) -> Self {
        Self(u.matrix().adjoint() * &self.0 * u.matrix())
    }
}

/// An `n x nbar` matrix with orthonormal columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry(ComplexMatrix);

impl Isometry {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, 1e-10)
    }

    pub fn with_tolerance(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if m.ncols() == 0 || m.ncols() > m.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "isometry must be n x nbar with 0 < nbar <= n, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if !is_finite(&m) {
            return Err(Error::NonFinite);
        }
        let k = m.ncols();
        let defect = (m.adjoint() * &m - ComplexMatrix::identity(k, k)).norm();
        if defect > tol {
            return Err(Error::NotIsometry { defect, tol });
        }
        Ok(Self(m))
    }

    pub fn new_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    /// The first `nbar` columns of the `n x n` identity.
    pub fn leading_columns(n: usize, nbar: usize) -> Self {
        Self(ComplexMatrix::identity(n, nbar))
    }

    /// Columns picked from the identity by basis index.
    pub fn from_basis_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(n, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            if i >= n {
                return Err(Error::DimensionMismatch(format!("basis index {i} >= {n}")));
            }
            m[(i, j)] = c(1.0, 0.0);
        }
        Self::new(m)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    /// An orthonormal basis of the orthogonal complement of the column span,
    /// so that `[E Ê]` is unitary.
    pub fn complement(&self) -> ComplexMatrix {
        let n = self.rows();
        let k = self.cols();
        let projector = ComplexMatrix::identity(n, n) - &self.0 * self.0.adjoint();
        let eig = projector.symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let mut out = ComplexMatrix::zeros(n, n - k);
        for (j, &idx) in order.iter().take(n - k).enumerate() {
            out.set_column(j, &eig.eigenvectors.column(idx));
        }
        out
    }

    /// `[E Ê]`.
    pub fn completion(&self) -> Unitary {
        let n = self.rows();
        let k = self.cols();
        let mut out = ComplexMatrix::zeros(n, n);
        out.view_mut((0, 0), (n, k)).copy_from(&self.0);
        if k < n {
            out.view_mut((0, k), (n, n - k)).copy_from(&self.complement());
        }
        Unitary(out)
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use rand::Rng;

    pub fn random_matrix(n: usize, m: usize, rng: &mut impl Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, m, |_, _| c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0))
    }

    pub fn random_unitary(n: usize, rng: &mut impl Rng) -> Unitary {
        let a = random_matrix(n, n, rng);
        let svd = a.svd(true, true);
        Unitary::new_unchecked(svd.u.unwrap() * svd.v_t.unwrap())
    }

    pub fn random_skew(n: usize, rng: &mut impl Rng) -> SkewHermitian {
        let a = random_matrix(n, n, rng);
        SkewHermitian::new_unchecked((&a - a.adjoint()) * c(0.5, 0.0))
    }

    pub fn random_isometry(n: usize, k: usize, rng: &mut impl Rng) -> Isometry {
        let u = random_unitary(n, rng);
        Isometry::new_unchecked(u.matrix().columns(0, k).into_owned())
    }

    pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }
}
