// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Small dense complex matrices and a Hermitian eigensolver.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major `N x N` complex matrix.
pub type Mat<T, const N: usize> = [[Complex<T>; N]; N];

/// Off-diagonal Frobenius threshold, relative to the full norm.
pub const JACOBI_TOL: f64 = 1e-14;
/// Sweep budget of [`hermitian_eigen`].
pub const JACOBI_MAX_SWEEPS: usize = 50;

pub fn zeros<T: Real, const N: usize>() -> Mat<T, N> {
    [[Complex::new(T::zero(), T::zero()); N]; N]
}

pub fn identity<T: Real, const N: usize>() -> Mat<T, N> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex::new(T::one(), T::zero());
    }
    m
}

pub fn matmul<T: Real, const N: usize>(a: &Mat<T, N>, b: &Mat<T, N>) -> Mat<T, N> {
    let mut c = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                c[i][j] = c[i][j] + aik * b[k][j];
            }
        }
    }
    c
}

/// Conjugate transpose.
pub fn adjoint<T: Real, const N: usize>(a: &Mat<T, N>) -> Mat<T, N> {
    let mut c = zeros();
    for i in 0..N {
        for j in 0..N {
            c[i][j] = a[j][i].conj();
        }
    }
    c
}

pub fn add<T: Real, const N: usize>(a: &Mat<T, N>, b: &Mat<T, N>) -> Mat<T, N> {
    let mut c = *a;
    for i in 0..N {
        for j in 0..N {
            c[i][j] = c[i][j] + b[i][j];
        }
    }
    c
}

pub fn sub<T: Real, const N: usize>(a: &Mat<T, N>, b: &Mat<T, N>) -> Mat<T, N> {
    let mut c = *a;
    for i in 0..N {
        for j in 0..N {
            c[i][j] = c[i][j] - b[i][j];
        }
    }
    c
}

pub fn scale<T: Real, const N: usize>(a: &Mat<T, N>, s: T) -> Mat<T, N> {
    let mut c = *a;
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x = *x * s;
        }
    }
    c
}

pub fn trace<T: Real, const N: usize>(a: &Mat<T, N>) -> Complex<T> {
    (0..N).fold(Complex::new(T::zero(), T::zero()), |acc, i| acc + a[i][i])
}

/// Frobenius norm.
pub fn norm<T: Real, const N: usize>(a: &Mat<T, N>) -> T {
    a.iter().flatten().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt()
}

/// Largest `|a_ij - conj(a_ji)|`.
pub fn hermiticity_defect<T: Real, const N: usize>(a: &Mat<T, N>) -> T {
    let mut worst = T::zero();
    for i in 0..N {
        for j in i..N {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

/// Kronecker product of two 2 x 2 matrices, `(a ⊗ b)[2i+k][2j+l] = a[i][j] b[k][l]`.
pub fn kron2<T: Real>(a: &Mat<T, 2>, b: &Mat<T, 2>) -> Mat<T, 4> {
    let mut c = zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    c[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    c
}

/// `|v><v|`.
pub fn outer<T: Real, const N: usize>(v: &[Complex<T>; N]) -> Mat<T, N> {
    let mut c = zeros();
    for i in 0..N {
        for j in 0..N {
            c[i][j] = v[i] * v[j].conj();
        }
    }
    c
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone, Copy)]
pub struct Eigen<T: Real, const N: usize> {
    /// Eigenvalues in ascending order.
    pub values: [T; N],
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: Mat<T, N>,
    pub sweeps: usize,
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Only the Hermitian part of `a` is used. Sweeps stop once the
/// off-diagonal norm falls below `JACOBI_TOL` times the Frobenius norm (or
/// a few machine epsilons for single precision).
pub fn hermitian_eigen<T: Real, const N: usize>(a: &Mat<T, N>) -> Result<Eigen<T, N>> {
    let half = T::lit(0.5);
    let mut m = *a;
    for i in 0..N {
        m[i][i] = Complex::new(m[i][i].re, T::zero());
        for j in i + 1..N {
            let h = (a[i][j] + a[j][i].conj()) * half;
            m[i][j] = h;
            m[j][i] = h.conj();
        }
    }
    let mut v = identity::<T, N>();
    let scale_norm = norm(&m);
    if scale_norm == T::zero() {
        return Ok(Eigen { values: [T::zero(); N], vectors: v, sweeps: 0 });
    }
    let threshold = scale_norm * T::tol(JACOBI_TOL, 4.0);

    let off = |m: &Mat<T, N>| {
        let mut s = T::zero();
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s = s + m[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&m) > threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::EigenFailure(sweeps));
        }
        sweeps += 1;
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| m[i][i].re.partial_cmp(&m[j][j].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = std::array::from_fn(|k| m[order[k]][order[k]].re);
    let mut vectors = zeros();
    for (k, &src) in order.iter().enumerate() {
        for row in 0..N {
            vectors[row][k] = v[row][src];
        }
    }
    Ok(Eigen { values, vectors, sweeps })
}

/// Annihilate `m[p][q]` with the unitary `U = diag(1, e^{-i phi}) R(theta)`
/// acting on rows and columns `p, q`; accumulates `v <- v U`.
fn rotate<T: Real, const N: usize>(m: &mut Mat<T, N>, v: &mut Mat<T, N>, p: usize, q: usize) {
    let apq = m[p][q];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let phase = apq / mag; // e^{i phi}
    let app = m[p][p].re;
    let aqq = m[q][q].re;
    let zeta = (aqq - app) / (T::lit(2.0) * mag);
    let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let upp = Complex::new(c, T::zero());
    let upq = Complex::new(s, T::zero());
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    for k in 0..N {
        let (akp, akq) = (m[k][p], m[k][q]);
        m[k][p] = akp * upp + akq * uqp;
        m[k][q] = akp * upq + akq * uqq;
        let (vkp, vkq) = (v[k][p], v[k][q]);
        v[k][p] = vkp * upp + vkq * uqp;
        v[k][q] = vkp * upq + vkq * uqq;
    }
    for k in 0..N {
        let (apk, aqk) = (m[p][k], m[q][k]);
        m[p][k] = upp.conj() * apk + uqp.conj() * aqk;
        m[q][k] = upq.conj() * apk + uqq.conj() * aqk;
    }
    m[p][q] = Complex::new(T::zero(), T::zero());
    m[q][p] = Complex::new(T::zero(), T::zero());
    m[p][p] = Complex::new(m[p][p].re, T::zero());
    m[q][q] = Complex::new(m[q][q].re, T::zero());
}

/// Eigenvalues of a real symmetric matrix.
pub fn symmetric_eigenvalues<T: Real, const N: usize>(a: &[[T; N]; N]) -> Result<[T; N]> {
    let m: Mat<T, N> = std::array::from_fn(|i| std::array::from_fn(|j| Complex::new(a[i][j], T::zero())));
    Ok(hermitian_eigen(&m)?.values)
}
