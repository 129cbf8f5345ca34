// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

use dephasim_core::params::ParamConfig;

use crate::args::{Axis, ScanArgs};
use crate::error::{CliError, CliResult};

/// Values of one parameter axis, the rest held fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
    pub fixed: ParamConfig,
}

impl ScanSpec {
    /// Resolve the command-line axis description. Without `--values` or
    /// `--range` the scan has the single configured value.
    pub fn from_args(args: &ScanArgs, fixed: ParamConfig) -> CliResult<Self> {
        let values = if let Some(r) = &args.range {
            parse_range(r)?
        } else if !args.values.is_empty() {
            args.values.clone()
        } else {
            vec![fixed.get(args.axis.config_key()).expect("axis key")]
        };
        let spec = Self { axis: args.axis, values, fixed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.values.is_empty() {
            return Err(CliError::Usage("scan needs at least one value".into()));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Usage("scan values must be finite".into()));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Usage("scan values must be strictly increasing".into()));
        }
        // Range checks (such as D_over_L >= 4) live in the parameter validation.
        for i in 0..self.values.len() {
            self.point(i).to_physical()?;
        }
        Ok(())
    }

    /// Configuration of point `i`.
    pub fn point(&self, i: usize) -> ParamConfig {
        let mut cfg = self.fixed;
        cfg.set(self.axis.config_key(), self.values[i]).expect("finite value for a known key");
        cfg
    }
}

/// `MIN,MAX,COUNT[,linear|log]`.
pub fn parse_range(text: &str) -> CliResult<Vec<f64>> {
    let usage = |msg: &str| CliError::Usage(format!("bad --range `{text}`: {msg}"));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(usage("expected MIN,MAX,COUNT[,linear|log]"));
    }
    let min: f64 = parts[0].parse().map_err(|_| usage("MIN is not a number"))?;
    let max: f64 = parts[1].parse().map_err(|_| usage("MAX is not a number"))?;
    let count: usize = parts[2].parse().map_err(|_| usage("COUNT is not a positive integer"))?;
    let log = match parts.get(3).copied().unwrap_or("linear") {
        "linear" => false,
        "log" => true,
        _ => return Err(usage("spacing must be `linear` or `log`")),
    };
    if count == 0 {
        return Err(usage("COUNT must be >= 1"));
    }
    if count == 1 {
        return Ok(vec![min]);
    }
    if log && !(min > 0.0 && max > 0.0) {
        return Err(usage("log spacing needs positive bounds"));
    }
    let last = (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            let f = i as f64 / last;
            if i + 1 == count {
                max
            } else if log {
                (min.ln() + f * (max.ln() - min.ln())).exp()
            } else {
                min + f * (max - min)
            }
        })
        .collect())
}
