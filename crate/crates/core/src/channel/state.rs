// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Validated density matrices.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::scalar::Real;

/// Hermiticity and trace tolerance for double precision.
pub const STATE_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted for double precision.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// Unit-trace positive semidefinite Hermitian `N x N` matrix.
///
/// Two-qubit states use the basis `|00>, |01>, |10>, |11>` with qubit A
/// as the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T: Real, const N: usize> {
    m: Mat<T, N>,
}

pub type DensityMatrix4<T> = DensityMatrix<T, 4>;
pub type DensityMatrix2<T> = DensityMatrix<T, 2>;

/// Bell states `Phi± = (|00> ± |11>)/√2` and `Psi± = (|10> ± |01>)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl<T: Real, const N: usize> DensityMatrix<T, N> {
    /// Validate and wrap a matrix.
    pub fn new(m: Mat<T, N>) -> Result<Self> {
        let tol = T::tol(STATE_TOL, 64.0);
        let herm = linalg::hermiticity_defect(&m);
        if !(herm <= tol) {
            return Err(Error::InvalidState(format!("not Hermitian (defect {herm})")));
        }
        let tr = linalg::trace(&m);
        if !((tr.re - T::one()).abs() <= tol && tr.im.abs() <= tol) {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let lowest = linalg::hermitian_eigen(&m)?.values[0];
        if !(lowest >= -T::tol(POSITIVITY_TOL, 256.0)) {
            return Err(Error::InvalidState(format!("negative eigenvalue {lowest}")));
        }
        Ok(Self { m })
    }

    /// Wrap without the eigenvalue check; for maps that preserve the
    /// invariants by construction.
    pub(crate) fn from_trusted(m: Mat<T, N>) -> Self {
        Self { m }
    }

    /// `|psi><psi|` for a normalized vector (normalized here).
    pub fn pure(psi: &[Complex<T>; N]) -> Result<Self> {
        let n = psi.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
        if !(n > T::zero() && n.is_finite()) {
            return Err(Error::InvalidState("zero or non-finite state vector".into()));
        }
        let v: [Complex<T>; N] = std::array::from_fn(|i| psi[i] / n);
        Ok(Self { m: linalg::outer(&v) })
    }

    /// Computational basis projector `|i><i|`.
    pub fn basis(i: usize) -> Self {
        assert!(i < N, "basis index out of range");
        let mut m = linalg::zeros();
        m[i][i] = Complex::new(T::one(), T::zero());
        Self { m }
    }

    pub fn maximally_mixed() -> Self {
        Self { m: linalg::scale(&linalg::identity(), T::one() / T::lit(N as f64)) }
    }

    pub fn entries(&self) -> &Mat<T, N> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.m[i][j]
    }

    pub fn trace(&self) -> Complex<T> {
        linalg::trace(&self.m)
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |a, z| a + z.norm_sqr())
    }

    pub fn eigenvalues(&self) -> Result<[T; N]> {
        Ok(linalg::hermitian_eigen(&self.m)?.values)
    }

    /// `U rho U^dagger`; `u` must be unitary.
    pub fn conjugate_by(&self, u: &Mat<T, N>) -> Self {
        Self { m: linalg::matmul(&linalg::matmul(u, &self.m), &linalg::adjoint(u)) }
    }

    /// Convex combination `w self + (1 - w) other`, `0 <= w <= 1`.
    pub fn mix(&self, other: &Self, w: T) -> Self {
        Self { m: linalg::add(&linalg::scale(&self.m, w), &linalg::scale(&other.m, T::one() - w)) }
    }

    pub fn cast<U: Real>(&self) -> DensityMatrix<U, N> {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| Complex::new(U::lit(self.m[i][j].re.as_f64()), U::lit(self.m[i][j].im.as_f64())))
        });
        DensityMatrix { m }
    }
}

impl<T: Real> DensityMatrix<T, 4> {
    pub fn bell(which: Bell) -> Self {
        let h = T::one() / T::lit(2.0).sqrt();
        let z = Complex::new(T::zero(), T::zero());
        let r = |x: T| Complex::new(x, T::zero());
        let psi = match which {
            Bell::PhiPlus => [r(h), z, z, r(h)],
            Bell::PhiMinus => [r(h), z, z, r(-h)],
            Bell::PsiPlus => [z, r(h), r(h), z],
            Bell::PsiMinus => [z, r(-h), r(h), z],
        };
        Self { m: linalg::outer(&psi) }
    }

    /// `a ⊗ b`.
    pub fn product(a: &DensityMatrix2<T>, b: &DensityMatrix2<T>) -> Self {
        Self { m: linalg::kron2(&a.m, &b.m) }
    }

    /// Reduced state of qubit A.
    pub fn reduced_a(&self) -> DensityMatrix2<T> {
        let mut r = linalg::zeros();
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = self.m[2 * i][2 * j] + self.m[2 * i + 1][2 * j + 1];
            }
        }
        DensityMatrix { m: r }
    }

    /// Reduced state of qubit B.
    pub fn reduced_b(&self) -> DensityMatrix2<T> {
        let mut r = linalg::zeros();
        for k in 0..2 {
            for l in 0..2 {
                r[k][l] = self.m[k][l] + self.m[2 + k][2 + l];
            }
        }
        DensityMatrix { m: r }
    }
}

impl<T: Real> DensityMatrix<T, 2> {
    /// `|+> = (|0> + |1>)/√2`.
    pub fn plus() -> Self {
        let h = T::lit(0.5);
        let e = Complex::new(h, T::zero());
        Self { m: [[e, e], [e, e]] }
    }

    /// Pure state on the Bloch sphere at polar angle `theta`, azimuth `phi`.
    pub fn bloch(theta: T, phi: T) -> Self {
        let half = T::lit(0.5) * theta;
        let psi = [Complex::new(half.cos(), T::zero()), Complex::from_polar(half.sin(), phi)];
        Self { m: linalg::outer(&psi) }
    }
}
