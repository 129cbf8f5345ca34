// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Information backflow: closed forms for the Bell pairs and the single
//! qubit, and the trace-distance route for arbitrary pairs.

use crate::channel::{apply_two_qubit, DensityMatrix4, DephasingExponents};
use crate::error::Result;
use crate::measures::distance::trace_distance;
use crate::measures::intervals::{backflow, negativity_intervals, Interval, RateCombination, ROOT_TOL};
use crate::scalar::Real;
use crate::spectral::DecoherenceTable;

/// Increments of the trace distance below this are rounding noise of the
/// eigensolver and are not counted as backflow.
pub const DISTANCE_NOISE: f64 = 1e-13;

/// Backflow of the Bell pairs `(Φ+, Φ-)` and `(Ψ+, Ψ-)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellBackflow<T> {
    pub n_phi: T,
    pub n_psi: T,
    pub intervals_phi: Vec<Interval<T>>,
    pub intervals_psi: Vec<Interval<T>>,
}

impl<T: Real> BellBackflow<T> {
    pub fn n_blp(&self) -> T {
        self.n_phi.max(self.n_psi)
    }
}

/// The Bell-pair distance is `exp(-Λ)` with `Λ = 2Γ0 ± δ`, which grows back
/// exactly where `γ1 ± γ2 < 0`.
pub fn blp_bell_analytic<T: Real>(table: &DecoherenceTable<T>) -> Result<BellBackflow<T>> {
    let intervals_phi = negativity_intervals(table, RateCombination::Sum)?;
    let intervals_psi = negativity_intervals(table, RateCombination::Diff)?;
    Ok(BellBackflow {
        n_phi: backflow(table, RateCombination::Sum, &intervals_phi)?,
        n_psi: backflow(table, RateCombination::Diff, &intervals_psi)?,
        intervals_phi,
        intervals_psi,
    })
}

/// Single-qubit backflow `N1` and the `γ1 < 0` intervals. The optimal pair
/// is antipodal on the equator, with distance `exp(-Γ0)`.
pub fn blp_single_qubit<T: Real>(table: &DecoherenceTable<T>) -> Result<(T, Vec<Interval<T>>)> {
    let intervals = negativity_intervals(table, RateCombination::Gamma1)?;
    Ok((backflow(table, RateCombination::Gamma1, &intervals)?, intervals))
}

/// Backflow of one pair of initial states.
#[derive(Debug, Clone, PartialEq)]
pub struct PairBackflow<T> {
    pub n: T,
    pub intervals: Vec<Interval<T>>,
}

/// Trace distance of the evolved pair at every grid time.
pub fn distance_trajectory<T: Real>(
    r1: &DensityMatrix4<T>,
    r2: &DensityMatrix4<T>,
    table: &DecoherenceTable<T>,
) -> Result<Vec<T>> {
    (0..table.len())
        .map(|i| {
            let e = DephasingExponents::new(table.gamma0[i], table.delta[i]);
            trace_distance(&apply_two_qubit(r1, &e), &apply_two_qubit(r2, &e))
        })
        .collect()
}

/// BLP backflow of a pair: positive increments of the trace distance on
/// the grid, grouped into maximal runs whose endpoints (local extrema of
/// the distance) are then located to `1e-8` by golden-section search on
/// the distance evaluated with Hermite-interpolated exponents.
pub fn blp_pair<T: Real>(r1: &DensityMatrix4<T>, r2: &DensityMatrix4<T>, table: &DecoherenceTable<T>) -> Result<PairBackflow<T>> {
    let d = distance_trajectory(r1, r2, table)?;
    let noise = T::lit(DISTANCE_NOISE);
    let distance_at = |t: T| -> Result<T> {
        let s = table.hermite(t);
        let e = DephasingExponents::new(s.gamma0, s.delta);
        trace_distance(&apply_two_qubit(r1, &e), &apply_two_qubit(r2, &e))
    };

    let last = d.len() - 1;
    let mut intervals = Vec::new();
    let mut n = T::zero();
    let mut i = 0;
    while i < last {
        if d[i + 1] - d[i] <= noise {
            i += 1;
            continue;
        }
        let a_idx = i;
        while i < last && d[i + 1] - d[i] > noise {
            i += 1;
        }
        let b_idx = i;
        // The minimum lies within one step of a_idx, the maximum within one
        // step of b_idx.
        let (start, d_start) = if a_idx == 0 {
            (table.tau[0], d[0])
        } else {
            extremum(&distance_at, table.tau[a_idx - 1], table.tau[a_idx + 1], false, (table.tau[a_idx], d[a_idx]))?
        };
        let (end, d_end) = if b_idx == last {
            (table.tau[last], d[last])
        } else {
            extremum(&distance_at, table.tau[b_idx - 1], table.tau[b_idx + 1], true, (table.tau[b_idx], d[b_idx]))?
        };
        n = n + (d_end - d_start).max(T::zero());
        intervals.push(Interval { start, end });
    }
    Ok(PairBackflow { n, intervals })
}

/// Golden-section search for a minimum (or maximum) of `f` on `[a, b]`.
/// The grid point `fallback` guards against a non-unimodal bracket: the
/// search result is used only if it improves on it.
fn extremum<T, F>(f: &F, mut a: T, mut b: T, maximize: bool, fallback: (T, T)) -> Result<(T, T)>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    let sign = if maximize { -T::one() } else { T::one() };
    let g = |t: T| -> Result<T> { Ok(sign * f(t)?) };
    let ratio = T::lit(0.5) * (T::lit(5.0).sqrt() - T::one());
    let tol = T::lit(ROOT_TOL);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut g1 = g(x1)?;
    let mut g2 = g(x2)?;
    while b - a > tol {
        if g1 <= g2 {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - ratio * (b - a);
            g1 = g(x1)?;
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + ratio * (b - a);
            g2 = g(x2)?;
        }
    }
    let t = T::lit(0.5) * (a + b);
    let v = f(t)?;
    let better = if maximize { v >= fallback.1 } else { v <= fallback.1 };
    Ok(if better { (t, v) } else { fallback })
}
