// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! CSV files with a `#`-prefixed metadata header.

use std::fs;
use std::path::{Path, PathBuf};

use dephasim_core::channel::DensityMatrix4;
use dephasim_core::params::{ParamConfig, CONFIG_KEYS};

use crate::error::{CliError, CliResult};

/// Every number is written with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Ordered `# key = value` lines.
#[derive(Debug, Clone, Default)]
pub struct Header {
    lines: Vec<(String, String)>,
}

impl Header {
    /// Header opening with the command name and every configuration key.
    pub fn new(command: &str, cfg: &ParamConfig) -> Self {
        let mut h = Self::default();
        h.push("command", command);
        for key in CONFIG_KEYS {
            h.push(key, num(cfg.get(key).expect("known key")));
        }
        h
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.lines.push((key.to_string(), value.into()));
        self
    }

    pub fn render(&self) -> String {
        self.lines.iter().map(|(k, v)| format!("# {k} = {v}\n")).collect()
    }
}

/// Header, column names and rows as CSV text.
pub fn csv_text(header: &Header, columns: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io { path: PathBuf::from("<csv buffer>"), source: e.into() };
    w.write_record(columns).map_err(io)?;
    for r in rows {
        debug_assert_eq!(r.len(), columns.len());
        w.write_record(r).map_err(io)?;
    }
    let body = w.into_inner().map_err(|e| CliError::Io { path: PathBuf::from("<csv buffer>"), source: e.into_error() })?;
    Ok(header.render() + &String::from_utf8(body).expect("CSV of UTF-8 fields"))
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    }
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Column names `re_ij` then `im_ij`, row-major.
pub fn state_columns() -> Vec<String> {
    let idx: Vec<String> = (0..4).flat_map(|i| (0..4).map(move |j| format!("{i}{j}"))).collect();
    idx.iter().map(|ij| format!("re_{ij}")).chain(idx.iter().map(|ij| format!("im_{ij}"))).collect()
}

/// The 32 real numbers of a state in [`state_columns`] order.
pub fn state_fields(rho: &DensityMatrix4<f64>) -> Vec<String> {
    let m = rho.entries();
    let re = m.iter().flatten().map(|z| num(z.re));
    let im = m.iter().flatten().map(|z| num(z.im));
    re.chain(im).collect()
}
