// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-step fourth-order Runge-Kutta integration of the master equation,
//! written with dense matrix products so that it shares no algebra with
//! the element-wise map in [`super::dephasing`].

use num_complex::Complex;

use crate::channel::dephasing::{SZ_A, SZ_B};
use crate::channel::state::{DensityMatrix2, DensityMatrix4};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::scalar::Real;
use crate::spectral::DecoherenceTable;

/// Largest accepted `step * max |generator eigenvalue|`.
pub const MAX_STEP_RATE: f64 = 0.1;

fn diag<T: Real, const N: usize>(d: [T; N]) -> Mat<T, N> {
    let mut m = linalg::zeros();
    for i in 0..N {
        m[i][i] = Complex::new(d[i], T::zero());
    }
    m
}

/// `L rho L - {L^2, rho} / 2`.
fn dissipator<T: Real, const N: usize>(l: &Mat<T, N>, rho: &Mat<T, N>) -> Mat<T, N> {
    let l2 = linalg::matmul(l, l);
    let jump = linalg::matmul(&linalg::matmul(l, rho), l);
    let anti = linalg::add(&linalg::matmul(&l2, rho), &linalg::matmul(rho, &l2));
    linalg::sub(&jump, &linalg::scale(&anti, T::lit(0.5)))
}

struct TwoQubitGenerator<T: Real> {
    l_plus: Mat<T, 4>,
    l_minus: Mat<T, 4>,
}

impl<T: Real> TwoQubitGenerator<T> {
    fn new() -> Self {
        let a = SZ_A.map(T::lit);
        let b = SZ_B.map(T::lit);
        Self {
            l_plus: diag(std::array::from_fn(|i| a[i] + b[i])),
            l_minus: diag(std::array::from_fn(|i| a[i] - b[i])),
        }
    }

    fn rhs(&self, rho: &Mat<T, 4>, g1: T, g2: T) -> Mat<T, 4> {
        let half = T::lit(0.5);
        linalg::add(
            &linalg::scale(&dissipator(&self.l_minus, rho), (g1 - g2) * half),
            &linalg::scale(&dissipator(&self.l_plus, rho), (g1 + g2) * half),
        )
    }
}

fn check_step<T: Real>(h: T, g1: T, g2: T) -> Result<()> {
    // The fastest mode decays at 4 |γ1 ± γ2|.
    let stiff = h * T::lit(4.0) * (g1 + g2).abs().max((g1 - g2).abs());
    if stiff.is_finite() && stiff < T::lit(MAX_STEP_RATE) {
        Ok(())
    } else {
        Err(Error::StepTooLarge(stiff.as_f64()))
    }
}

fn rk4_step<T: Real, const N: usize>(
    y: &Mat<T, N>,
    h: T,
    f: impl Fn(&Mat<T, N>, usize) -> Mat<T, N>,
) -> Mat<T, N> {
    let half = T::lit(0.5);
    let k1 = f(y, 0);
    let k2 = f(&linalg::add(y, &linalg::scale(&k1, h * half)), 1);
    let k3 = f(&linalg::add(y, &linalg::scale(&k2, h * half)), 1);
    let k4 = f(&linalg::add(y, &linalg::scale(&k3, h)), 2);
    let sum = linalg::add(&linalg::add(&k1, &linalg::scale(&k2, T::lit(2.0))), &linalg::add(&linalg::scale(&k3, T::lit(2.0)), &k4));
    linalg::add(y, &linalg::scale(&sum, h / T::lit(6.0)))
}

/// Integrate from `times[0]` through every entry of `times`, taking
/// `substeps` equal RK4 steps per interval and evaluating `rates(t)` at
/// every stage time. Returns the state at each entry of `times`.
pub fn rk4_evolve_with<T, F>(rho0: &DensityMatrix4<T>, times: &[T], substeps: usize, rates: F) -> Result<Vec<DensityMatrix4<T>>>
where
    T: Real,
    F: Fn(T) -> Result<(T, T)>,
{
    let gen = TwoQubitGenerator::new();
    let substeps = substeps.max(1);
    let mut y = *rho0.entries();
    let mut out = Vec::with_capacity(times.len());
    out.push(*rho0);
    for w in times.windows(2) {
        let h = (w[1] - w[0]) / T::lit(substeps as f64);
        for k in 0..substeps {
            let t = w[0] + h * T::lit(k as f64);
            let stages = [rates(t)?, rates(t + h * T::lit(0.5))?, rates(if k + 1 == substeps { w[1] } else { t + h })?];
            for &(g1, g2) in &stages {
                check_step(h, g1, g2)?;
            }
            y = rk4_step(&y, h, |m, s| gen.rhs(m, stages[s].0, stages[s].1));
        }
        out.push(DensityMatrix4::from_trusted(y));
    }
    Ok(out)
}

/// Integrate on the table grid with the rates interpolated linearly
/// between grid points; returns the state at every grid time.
///
/// Linear interpolation limits the accuracy to `O(h^2)` in the rates.
pub fn rk4_evolve<T: Real>(rho0: &DensityMatrix4<T>, table: &DecoherenceTable<T>) -> Result<Vec<DensityMatrix4<T>>> {
    rk4_evolve_with(rho0, &table.tau, 1, |t| Ok(table.rates_linear(t)))
}

/// Single-qubit analogue of [`rk4_evolve_with`] with generator
/// `γ1(t) (σz ρ σz - ρ)`, i.e. jump operator `σz` at rate `γ1`.
pub fn rk4_single_qubit_with<T, F>(rho0: &DensityMatrix2<T>, times: &[T], substeps: usize, rate: F) -> Result<Vec<DensityMatrix2<T>>>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    let sz = diag([T::one(), -T::one()]);
    let substeps = substeps.max(1);
    let mut y = *rho0.entries();
    let mut out = Vec::with_capacity(times.len());
    out.push(*rho0);
    for w in times.windows(2) {
        let h = (w[1] - w[0]) / T::lit(substeps as f64);
        for k in 0..substeps {
            let t = w[0] + h * T::lit(k as f64);
            let stages = [rate(t)?, rate(t + h * T::lit(0.5))?, rate(if k + 1 == substeps { w[1] } else { t + h })?];
            for &g in &stages {
                check_step(h, g * T::lit(0.5), g * T::lit(0.5))?;
            }
            y = rk4_step(&y, h, |m, s| linalg::scale(&dissipator(&sz, m), stages[s]));
        }
        out.push(DensityMatrix2::from_trusted(y));
    }
    Ok(out)
}
