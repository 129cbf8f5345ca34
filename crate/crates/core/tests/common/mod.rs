// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use dephasim_core::params::{default_params, reduce, ReducedParams};
use dephasim_core::spectral::{auto_horizon, build_table, DecoherenceTable, HorizonOptions, DEFAULT_HORIZON_ETA};

pub const TOL: f64 = 1e-10;

pub fn rp(a_b: f64, d: f64) -> ReducedParams<f64> {
    reduce(&default_params().with_a_b_over_a_rb(a_b).with_d_over_l(d)).unwrap()
}

pub fn horizon(a_b: f64, d: f64) -> f64 {
    auto_horizon(&rp(a_b, d), DEFAULT_HORIZON_ETA, HorizonOptions::default()).unwrap()
}

type Key = (u64, u64, usize, u64);
type Slot = Arc<OnceLock<Arc<DecoherenceTable<f64>>>>;

/// Tables shared between the tests of one binary, keyed by
/// `(a_B, d, n_steps, tol)` on the default horizon.
pub fn table(a_b: f64, d: f64, n_steps: usize, tol: f64) -> Arc<DecoherenceTable<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Slot>>> = OnceLock::new();
    let key = (a_b.to_bits(), d.to_bits(), n_steps, tol.to_bits());
    let slot = {
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        map.entry(key).or_default().clone()
    };
    slot.get_or_init(|| {
        let h = horizon(a_b, d);
        Arc::new(build_table(&rp(a_b, d), h, n_steps, tol).unwrap())
    })
    .clone()
}
