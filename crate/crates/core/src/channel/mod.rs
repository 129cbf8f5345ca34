// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Qubit states and the two-qubit dephasing channel.

pub mod dephasing;
pub mod rk4;
pub mod state;

pub use dephasing::{
    apply_single_qubit, apply_two_qubit, factor_matrix, intermediate_factor_matrix, is_psd, min_eigenvalue,
    DephasingExponents,
};
pub use rk4::{rk4_evolve, rk4_evolve_with, rk4_single_qubit_with};
pub use state::{Bell, DensityMatrix, DensityMatrix2, DensityMatrix4};
