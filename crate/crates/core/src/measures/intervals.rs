// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Locating the time intervals on which a rate combination is negative.

use crate::error::Result;
use crate::scalar::Real;
use crate::spectral::{DecoherenceTable, RateSample};

/// Endpoint tolerance in reduced time.
pub const ROOT_TOL: f64 = 1e-8;
/// Negative excursions shallower than this (reduced rate units) are
/// treated as numerical noise.
pub const NEGATIVITY_FLOOR: f64 = 1e-12;

/// Closed time interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub start: T,
    pub end: T,
}

impl<T: Real> Interval<T> {
    pub fn width(&self) -> T {
        self.end - self.start
    }
}

/// The rate combinations that govern the two-qubit coherences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateCombination {
    /// `γ1`, governing single-flip coherences.
    Gamma1,
    /// `γ1 + γ2`, governing the `(00, 11)` coherence.
    Sum,
    /// `γ1 - γ2`, governing the `(01, 10)` coherence.
    Diff,
}

impl RateCombination {
    pub fn rate<T: Real>(self, s: &RateSample<T>) -> T {
        match self {
            Self::Gamma1 => s.gamma1,
            Self::Sum => s.gamma1 + s.gamma2,
            Self::Diff => s.gamma1 - s.gamma2,
        }
    }

    /// Exponent of the coherence driven by this rate: `Γ0`, `2Γ0 + δ` or
    /// `2Γ0 - δ`.
    pub fn exponent<T: Real>(self, s: &RateSample<T>) -> T {
        let two = T::lit(2.0);
        match self {
            Self::Gamma1 => s.gamma0,
            Self::Sum => two * s.gamma0 + s.delta,
            Self::Diff => two * s.gamma0 - s.delta,
        }
    }

    /// Column label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            Self::Gamma1 => "gamma1",
            Self::Sum => "gamma_sum",
            Self::Diff => "gamma_diff",
        }
    }
}

/// Runs of negative grid values, returned as index pairs `(first, last)`
/// of the negative samples. Runs whose minimum stays above
/// `-NEGATIVITY_FLOOR` are dropped.
pub fn negative_runs<T: Real>(values: &[T]) -> Vec<(usize, usize)> {
    let floor = -T::lit(NEGATIVITY_FLOOR);
    let mut runs = Vec::new();
    let mut i = 0;
    while i < values.len() {
        if values[i] < T::zero() {
            let start = i;
            let mut lowest = values[i];
            while i + 1 < values.len() && values[i + 1] < T::zero() {
                i += 1;
                lowest = lowest.min(values[i]);
            }
            if lowest <= floor {
                runs.push((start, i));
            }
        }
        i += 1;
    }
    runs
}

/// Root of `f` in `[a, b]` with `f(a) >= 0 > f(b)` or `f(a) < 0 <= f(b)`,
/// by bisection to `tol`.
pub fn bisect<T, F>(f: F, mut a: T, mut b: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    let neg_a = f(a)? < T::zero();
    while b - a > tol {
        let m = T::lit(0.5) * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (f(m)? < T::zero()) == neg_a {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(T::lit(0.5) * (a + b))
}

/// Intervals on which `combo` is negative, with endpoints refined by
/// bisection on the table's continuous-time rates.
pub fn negativity_intervals<T: Real>(table: &DecoherenceTable<T>, combo: RateCombination) -> Result<Vec<Interval<T>>> {
    let values: Vec<T> = (0..table.len()).map(|i| combo.rate(&table.sample(i))).collect();
    let tol = T::lit(ROOT_TOL);
    let rate = |t: T| Ok(combo.rate(&table.exact(t)?));
    let last = table.len() - 1;
    negative_runs(&values)
        .into_iter()
        .map(|(i, j)| {
            let start = if i == 0 { table.tau[0] } else { bisect(rate, table.tau[i - 1], table.tau[i], tol)? };
            let end = if j == last { table.tau[last] } else { bisect(rate, table.tau[j], table.tau[j + 1], tol)? };
            Ok(Interval { start, end })
        })
        .collect()
}

/// `Σ_i [exp(-Λ(b_i)) - exp(-Λ(a_i))]` for the coherence driven by `combo`.
pub fn backflow<T: Real>(table: &DecoherenceTable<T>, combo: RateCombination, intervals: &[Interval<T>]) -> Result<T> {
    let mut total = T::zero();
    for iv in intervals {
        let ea = combo.exponent(&table.exact(iv.start)?);
        let eb = combo.exponent(&table.exact(iv.end)?);
        total = total + ((-eb).exp() - (-ea).exp()).max(T::zero());
    }
    Ok(total)
}
