// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Non-Markovianity diagnostics: trace distance, BLP backflow, rate
//! negativity (divisibility) and additivity of the measure.

pub mod blp;
pub mod distance;
pub mod intervals;

pub use blp::{blp_bell_analytic, blp_pair, blp_single_qubit, distance_trajectory, BellBackflow, PairBackflow};
pub use distance::trace_distance;
pub use intervals::{negativity_intervals, Interval, RateCombination};

use crate::error::Result;
use crate::sampling::PairCategory;
use crate::scalar::Real;
use crate::spectral::DecoherenceTable;

/// Dead-band for comparing `N2` with `2 N1`.
pub const REGIME_DEADBAND: f64 = 1e-9;

/// Negativity of the two-qubit rate combinations.
#[derive(Debug, Clone, PartialEq)]
pub struct Divisibility<T> {
    pub divisible: bool,
    /// Intervals with `γ1 + γ2 < 0`.
    pub sum: Vec<Interval<T>>,
    /// Intervals with `γ1 - γ2 < 0`.
    pub diff: Vec<Interval<T>>,
}

/// The two-qubit map is divisible iff neither `γ1 + γ2` nor `γ1 - γ2` has
/// a negative excursion deeper than the noise floor.
pub fn divisibility<T: Real>(table: &DecoherenceTable<T>) -> Result<Divisibility<T>> {
    let sum = negativity_intervals(table, RateCombination::Sum)?;
    let diff = negativity_intervals(table, RateCombination::Diff)?;
    Ok(Divisibility { divisible: sum.is_empty() && diff.is_empty(), sum, diff })
}

/// `∫ [max(0, -(γ1 + γ2)) + max(0, -(γ1 - γ2))] dτ` by the trapezoid rule;
/// a plotting aid that summarizes how non-divisible the map is.
pub fn negativity_integral<T: Real>(table: &DecoherenceTable<T>) -> T {
    let f = |i: usize| {
        let s = table.sample(i);
        (-(s.gamma1 + s.gamma2)).max(T::zero()) + (-(s.gamma1 - s.gamma2)).max(T::zero())
    };
    (1..table.len()).fold(T::zero(), |acc, i| acc + T::lit(0.5) * (table.tau[i] - table.tau[i - 1]) * (f(i) + f(i - 1)))
}

/// Whether two qubits carry more or less backflow than two independent ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SubAdditive,
    Additive,
    SuperAdditive,
}

impl Regime {
    pub fn classify<T: Real>(n2: T, two_n1: T) -> Self {
        let gap = n2 - two_n1;
        if gap.abs() <= T::lit(REGIME_DEADBAND) {
            Self::Additive
        } else if gap > T::zero() {
            Self::SuperAdditive
        } else {
            Self::SubAdditive
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::SubAdditive => "sub",
            Self::Additive => "equal",
            Self::SuperAdditive => "super",
        }
    }
}

/// Two-qubit against single-qubit backflow.
#[derive(Debug, Clone, PartialEq)]
pub struct Additivity<T> {
    pub n2: T,
    pub n1: T,
    pub two_n1: T,
    pub regime: Regime,
    /// `Σ_i [exp(-Γ0(b_i)) + exp(-Γ0(a_i))] [exp(-Γ0(b_i)) - exp(-Γ0(a_i))]`
    /// over the `γ1 < 0` intervals: the value of `N2` when the qubits see
    /// independent environments (`δ = 0`).
    pub factorized_prediction: T,
    pub gamma1_intervals: Vec<Interval<T>>,
    /// More than one `γ1 < 0` interval, so the prediction is the
    /// interval-by-interval generalization.
    pub multi_interval: bool,
}

pub fn additivity_report<T: Real>(table: &DecoherenceTable<T>) -> Result<Additivity<T>> {
    let n2 = blp_bell_analytic(table)?.n_blp();
    let (n1, gamma1_intervals) = blp_single_qubit(table)?;
    let mut prediction = T::zero();
    for iv in &gamma1_intervals {
        let ea = (-table.exact(iv.start)?.gamma0).exp();
        let eb = (-table.exact(iv.end)?.gamma0).exp();
        prediction = prediction + (eb + ea) * (eb - ea).max(T::zero());
    }
    let two_n1 = T::lit(2.0) * n1;
    Ok(Additivity {
        n2,
        n1,
        two_n1,
        regime: Regime::classify(n2, two_n1),
        factorized_prediction: prediction,
        multi_interval: gamma1_intervals.len() > 1,
        gamma1_intervals,
    })
}

/// All diagnostics of one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct NmReport<T> {
    pub n_phi: T,
    pub n_psi: T,
    pub n_blp: T,
    pub backflow_intervals_phi: Vec<Interval<T>>,
    pub backflow_intervals_psi: Vec<Interval<T>>,
    pub n1: T,
    pub divisible: bool,
    pub negativity_intervals_sum: Vec<Interval<T>>,
    pub negativity_intervals_diff: Vec<Interval<T>>,
    pub negativity_integral: T,
    /// Filled by sampling scans; empty otherwise.
    pub sampled_max_by_category: Vec<(PairCategory, T)>,
}

/// Analytic diagnostics of a table (no sampling).
pub fn nm_report<T: Real>(table: &DecoherenceTable<T>) -> Result<NmReport<T>> {
    let bell = blp_bell_analytic(table)?;
    let (n1, _) = blp_single_qubit(table)?;
    // The Bell intervals are the negativity intervals of γ1 ± γ2.
    let divisible = bell.intervals_phi.is_empty() && bell.intervals_psi.is_empty();
    Ok(NmReport {
        n_phi: bell.n_phi,
        n_psi: bell.n_psi,
        n_blp: bell.n_blp(),
        negativity_intervals_sum: bell.intervals_phi.clone(),
        negativity_intervals_diff: bell.intervals_psi.clone(),
        backflow_intervals_phi: bell.intervals_phi,
        backflow_intervals_psi: bell.intervals_psi,
        n1,
        divisible,
        negativity_integral: negativity_integral(table),
        sampled_max_by_category: Vec::new(),
    })
}
