// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two dephasing qubits in a shared Bogoliubov environment.
//!
//! Impurity atoms trapped in a superlattice act as qubits and dephase
//! through collisions with a surrounding condensate. This crate evaluates
//! the time-dependent decay rates of that environment, applies the exact
//! two-qubit dephasing map, and measures non-Markovianity by information
//! backflow (trace distance) and by divisibility (rate negativity).
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the precision for typical use.
//!
//! ```
//! use dephasim_core::{params, spectral, measures};
//!
//! let p = params::default_params().with_a_b_over_a_rb(0.02).with_d_over_l(4.0);
//! let rp = params::reduce(&p).unwrap();
//! let table = spectral::build_table(&rp, 20.0, 128, 1e-8).unwrap();
//! let bell = measures::blp_bell_analytic(&table).unwrap();
//! assert!(bell.n_blp() > 0.0);
//! ```

// Dense small-matrix code reads best with explicit indices, and negated
// comparisons are how NaN inputs get rejected.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod params;
pub mod quadrature;
pub mod sampling;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ReducedParamsF64 = params::ReducedParams<f64>;
pub type ReducedParamsF32 = params::ReducedParams<f32>;
pub type DecoherenceTableF64 = spectral::DecoherenceTable<f64>;
pub type DecoherenceTableF32 = spectral::DecoherenceTable<f32>;
pub type DensityMatrix4F64 = channel::DensityMatrix4<f64>;
pub type DensityMatrix4F32 = channel::DensityMatrix4<f32>;
pub type DensityMatrix2F64 = channel::DensityMatrix2<f64>;
pub type DensityMatrix2F32 = channel::DensityMatrix2<f32>;
pub type DephasingExponentsF64 = channel::DephasingExponents<f64>;
pub type NmReportF64 = measures::NmReport<f64>;
