// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! The exact pure-dephasing map as element-wise damping of coherences.
//!
//! For the diagonal Lindblad generator with jump operators
//! `L± = σz^A ± σz^B` and rates `(γ1 ± γ2)/2`, element `(i, j)` obeys
//! `dρ_ij/dt = -(1/4) Σ± (γ1 ± γ2)(l±_i - l±_j)^2 ρ_ij`. Integrating gives
//! `ρ_ij(t) = ρ_ij(0) exp(-Λ_ij)` with
//!
//! ```text
//! Λ_ij = [Γ0 ((Δa)^2 + (Δb)^2) + δ Δa Δb] / 4
//! ```
//!
//! where `Δa`, `Δb` are the differences of the σz^A and σz^B eigenvalues.
//! Single flips decay with `Γ0`, `(00, 11)` with `2Γ0 + δ` and `(01, 10)`
//! with `2Γ0 - δ`.

use std::ops::{Add, Sub};

use crate::channel::state::{DensityMatrix2, DensityMatrix4};
use crate::error::Result;
use crate::linalg;
use crate::scalar::Real;

/// σz^A eigenvalues in the basis `00, 01, 10, 11`.
pub const SZ_A: [f64; 4] = [1.0, 1.0, -1.0, -1.0];
/// σz^B eigenvalues in the basis `00, 01, 10, 11`.
pub const SZ_B: [f64; 4] = [1.0, -1.0, 1.0, -1.0];

/// Accumulated dephasing `Γ0(t)` and cross-talk correction `δ(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DephasingExponents<T> {
    pub gamma0: T,
    pub delta: T,
}

impl<T: Real> DephasingExponents<T> {
    pub fn new(gamma0: T, delta: T) -> Self {
        Self { gamma0, delta }
    }

    /// Exponent of the `(00, 11)` coherence, `2Γ0 + δ`.
    pub fn phi_exponent(&self) -> T {
        T::lit(2.0) * self.gamma0 + self.delta
    }

    /// Exponent of the `(01, 10)` coherence, `2Γ0 - δ`.
    pub fn psi_exponent(&self) -> T {
        T::lit(2.0) * self.gamma0 - self.delta
    }

    /// `Λ_ij` of the two-qubit map.
    pub fn element(&self, i: usize, j: usize) -> T {
        let da = T::lit(SZ_A[i] - SZ_A[j]);
        let db = T::lit(SZ_B[i] - SZ_B[j]);
        (self.gamma0 * (da * da + db * db) + self.delta * da * db) * T::lit(0.25)
    }

    /// All `Λ_ij`.
    pub fn matrix(&self) -> [[T; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.element(i, j)))
    }
}

impl<T: Real> Add for DephasingExponents<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { gamma0: self.gamma0 + o.gamma0, delta: self.delta + o.delta }
    }
}

impl<T: Real> Sub for DephasingExponents<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { gamma0: self.gamma0 - o.gamma0, delta: self.delta - o.delta }
    }
}

/// Evolve a two-qubit state by the exact map with exponents `e`.
///
/// Hermiticity and trace are preserved exactly; positivity holds whenever
/// [`factor_matrix`] of `e` is positive semidefinite, which is the case
/// for exponents produced by the physical rates.
pub fn apply_two_qubit<T: Real>(rho: &DensityMatrix4<T>, e: &DephasingExponents<T>) -> DensityMatrix4<T> {
    let f = factor_matrix(e);
    let mut m = *rho.entries();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                m[i][j] = m[i][j] * f[i][j];
            }
        }
    }
    DensityMatrix4::from_trusted(m)
}

/// Evolve a single-qubit state: coherences are damped by `exp(-Γ0)`.
pub fn apply_single_qubit<T: Real>(rho: &DensityMatrix2<T>, gamma0: T) -> DensityMatrix2<T> {
    let f = (-gamma0).exp();
    let mut m = *rho.entries();
    m[0][1] = m[0][1] * f;
    m[1][0] = m[1][0] * f;
    DensityMatrix2::from_trusted(m)
}

/// Hadamard factors `exp(-Λ_ij)` of the map from time 0 to `e`.
pub fn factor_matrix<T: Real>(e: &DephasingExponents<T>) -> [[T; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { T::one() } else { (-e.element(i, j)).exp() }))
}

/// Factor matrix of the intermediate map between exponents `e1` (at `t'`)
/// and `e2` (at `t >= t'`). The map `ρ ↦ M ∘ ρ` is completely positive iff
/// `M` is positive semidefinite.
pub fn intermediate_factor_matrix<T: Real>(e1: &DephasingExponents<T>, e2: &DephasingExponents<T>) -> [[T; 4]; 4] {
    factor_matrix(&(*e2 - *e1))
}

/// Smallest eigenvalue of a real symmetric factor matrix.
pub fn min_eigenvalue<T: Real>(m: &[[T; 4]; 4]) -> Result<T> {
    Ok(linalg::symmetric_eigenvalues(m)?[0])
}

/// Positive semidefiniteness of a factor matrix, to `-tol`.
pub fn is_psd<T: Real>(m: &[[T; 4]; 4], tol: T) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::state::Bell;
    use num_complex::Complex;

    #[test]
    fn exponent_pattern() {
        let e = DephasingExponents::new(0.3f64, -0.1);
        let l = e.matrix();
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert!((l[i][j] - 0.3).abs() < 1e-15);
            assert!((l[j][i] - 0.3).abs() < 1e-15);
        }
        assert!((l[0][3] - 0.5).abs() < 1e-15);
        assert!((l[1][2] - 0.7).abs() < 1e-15);
        for i in 0..4 {
            assert_eq!(l[i][i], 0.0);
        }
    }

    #[test]
    fn identity_at_zero() {
        let rho = DensityMatrix4::<f64>::bell(Bell::PsiMinus);
        assert_eq!(apply_two_qubit(&rho, &DephasingExponents::default()), rho);
    }

    #[test]
    fn phi_plus_coherence() {
        let e = DephasingExponents::new(0.2, 0.05);
        let out = apply_two_qubit(&DensityMatrix4::<f64>::bell(Bell::PhiPlus), &e);
        assert!((out.get(0, 3).re - 0.5 * (-0.45f64).exp()).abs() < 1e-16);
        assert!((out.get(0, 0).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_qubit_plus() {
        let out = apply_single_qubit(&DensityMatrix2::<f64>::plus(), 2f64.ln());
        assert!((out.get(0, 1) - Complex::new(0.25, 0.0)).norm() < 1e-16);
        assert_eq!(out.get(0, 0), Complex::new(0.5, 0.0));
    }

    #[test]
    fn factor_matrix_positivity() {
        assert!(is_psd(&factor_matrix(&DephasingExponents::new(0.0f64, 0.0)), 1e-12).unwrap());
        assert!(is_psd(&factor_matrix(&DephasingExponents::new(0.1f64, 0.02)), 1e-12).unwrap());
        // A shrinking Φ exponent with Γ0 fixed is not completely positive.
        let m = intermediate_factor_matrix(&DephasingExponents::new(0.1, 0.0), &DephasingExponents::new(0.1, -0.01));
        assert!(min_eigenvalue(&m).unwrap() < -1e-4);
    }
}
