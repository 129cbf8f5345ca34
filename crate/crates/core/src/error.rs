// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("quadrature did not reach tolerance {tol:e} at tau = {tau} (estimated error {err:e})")]
    QuadratureFailure { tau: f64, tol: f64, err: f64 },

    #[error("no horizon found below cap {cap} (eta = {eta})")]
    HorizonNotFound { cap: f64, eta: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("RK4 step too large: step * max rate = {0} (must be < 0.1)")]
    StepTooLarge(f64),

    #[error("Jacobi eigensolver did not converge in {0} sweeps")]
    EigenFailure(usize),

    #[error("invalid table: {0}")]
    InvalidTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
