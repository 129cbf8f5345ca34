// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] dephasim_core::Error),

    #[error("schema mismatch in column `{column}`: {msg}")]
    SchemaMismatch { column: String, msg: String },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{failed} of {total} scan points failed (first: {first}); partial results written to {}", path.display())]
    PartialScan { failed: usize, total: usize, first: String, path: PathBuf },
}

impl CliError {
    /// Process exit code: 2 for usage, configuration and input errors,
    /// 1 for failed computations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::SchemaMismatch { .. } => 2,
            Self::Core(dephasim_core::Error::Config { .. } | dephasim_core::Error::InvalidParams(_)) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
