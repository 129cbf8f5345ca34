// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::PathBuf;

use dephasim_core::channel::{apply_two_qubit, Bell, DensityMatrix2, DensityMatrix4, DephasingExponents};
use dephasim_core::measures::{
    additivity_report, blp_bell_analytic, negativity_intervals, nm_report, RateCombination,
};
use dephasim_core::params::ParamConfig;
use dephasim_core::sampling::{sampled_scan, SeededSampler, SeparableRecipe, StateGenerator};
use dephasim_core::spectral::{auto_horizon, build_table, DecoherenceTable, HorizonOptions};
use rayon::prelude::*;

use crate::args::{GlobalArgs, InitialState, PairsArgs, ScanArgs};
use crate::error::{CliError, CliResult};
use crate::output::{csv_text, num, state_columns, state_fields, write, Header};
use crate::scan::ScanSpec;

/// Validated global options and the base configuration.
#[derive(Debug, Clone)]
pub struct Context {
    pub cfg: ParamConfig,
    pub global: GlobalArgs,
}

impl Context {
    pub fn new(global: &GlobalArgs) -> CliResult<Self> {
        let mut cfg = match &global.config {
            Some(path) => {
                let text =
                    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                ParamConfig::parse(&text)?
            }
            None => ParamConfig::default(),
        };
        for item in &global.set {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got `{item}`")))?;
            let v: f64 = v.trim().parse().map_err(|_| CliError::Usage(format!("--set {item}: not a number")))?;
            cfg.set(k.trim(), v).map_err(CliError::Usage)?;
        }
        cfg.to_physical()?;
        if !(global.tol > 0.0 && global.tol < 1.0) {
            return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {}", global.tol)));
        }
        if !(global.eta > 0.0 && global.eta < 1.0) {
            return Err(CliError::Usage(format!("--eta must lie in (0, 1), got {}", global.eta)));
        }
        if let Some(t) = global.tau_max {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Usage(format!("--tau-max must be positive, got {t}")));
            }
        }
        Ok(Self { cfg, global: global.clone() })
    }

    fn out(&self, name: &str) -> PathBuf {
        self.global.out.join(name)
    }

    /// Header shared by every output: configuration and run settings.
    fn header(&self, command: &str, cfg: &ParamConfig) -> Header {
        let mut h = Header::new(command, cfg);
        h.push("seed", self.global.seed.to_string())
            .push("tol", num(self.global.tol))
            .push("n_steps", self.global.n_steps.to_string())
            .push("eta", num(self.global.eta));
        h
    }

    /// Grid end for `cfg`: `--tau-max` or the automatic horizon.
    fn horizon(&self, cfg: &ParamConfig) -> CliResult<f64> {
        match self.global.tau_max {
            Some(t) => Ok(t),
            None => Ok(auto_horizon(&cfg.reduce()?, self.global.eta, HorizonOptions::default())?),
        }
    }

    fn table(&self, cfg: &ParamConfig) -> CliResult<DecoherenceTable<f64>> {
        let tau_max = self.horizon(cfg)?;
        Ok(build_table(&cfg.reduce()?, tau_max, self.global.n_steps as usize, self.global.tol)?)
    }

    /// Header and table of a single-point command.
    fn single_point(&self, command: &str) -> CliResult<(Header, DecoherenceTable<f64>)> {
        let table = self.table(&self.cfg)?;
        let mut h = self.header(command, &self.cfg);
        h.push("tau_max", num(table.tau_max()));
        h.push("t0_seconds", num(self.cfg.reduce()?.t0));
        Ok((h, table))
    }

    fn emit(&self, name: &str, text: &str) -> CliResult<()> {
        let path = self.out(name);
        write(&path, text)?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

pub fn rates(ctx: &Context) -> CliResult<()> {
    let (h, t) = ctx.single_point("rates")?;
    let rows: Vec<Vec<String>> = (0..t.len())
        .map(|i| {
            let (g1, g2) = (t.gamma1[i], t.gamma2[i]);
            vec![num(t.tau[i]), num(g1), num(g2), num(g1 + g2), num(g1 - g2)]
        })
        .collect();
    ctx.emit("rates.csv", &csv_text(&h, &["tau", "gamma1", "gamma2", "gamma_sum", "gamma_diff"], &rows)?)
}

fn initial_state(which: InitialState, seed: u64) -> DensityMatrix4<f64> {
    let mut g = StateGenerator::new(SeededSampler::new(seed).stream(0));
    match which {
        InitialState::PhiPlus => DensityMatrix4::bell(Bell::PhiPlus),
        InitialState::PhiMinus => DensityMatrix4::bell(Bell::PhiMinus),
        InitialState::PsiPlus => DensityMatrix4::bell(Bell::PsiPlus),
        InitialState::PsiMinus => DensityMatrix4::bell(Bell::PsiMinus),
        InitialState::PlusPlus => DensityMatrix4::product(&DensityMatrix2::plus(), &DensityMatrix2::plus()),
        InitialState::RandomPure => g.pure(),
        InitialState::RandomMixed => g.ginibre(),
    }
}

pub fn evolve(ctx: &Context, which: InitialState) -> CliResult<()> {
    let (mut h, t) = ctx.single_point("evolve")?;
    h.push("state", format!("{which:?}"));
    let rho0 = initial_state(which, ctx.global.seed);
    let rows: Vec<Vec<String>> = (0..t.len())
        .map(|i| {
            let rho = apply_two_qubit(&rho0, &DephasingExponents::new(t.gamma0[i], t.delta[i]));
            std::iter::once(num(t.tau[i])).chain(state_fields(&rho)).collect()
        })
        .collect();
    let mut columns = vec!["tau".to_string()];
    columns.extend(state_columns());
    let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
    ctx.emit("evolve.csv", &csv_text(&h, &columns, &rows)?)
}

pub fn divisibility(ctx: &Context) -> CliResult<()> {
    let (h, t) = ctx.single_point("divisibility")?;
    let mut rows = Vec::new();
    let mut divisible = true;
    for combo in [RateCombination::Gamma1, RateCombination::Sum, RateCombination::Diff] {
        for iv in negativity_intervals(&t, combo)? {
            if combo != RateCombination::Gamma1 {
                divisible = false;
            }
            rows.push(vec![num(iv.start), num(iv.end), combo.label().to_string()]);
        }
    }
    ctx.emit("divisibility.csv", &csv_text(&h, &["t_start", "t_end", "rate_combination"], &rows)?)?;
    println!("divisible = {divisible}");
    Ok(())
}

pub fn blp(ctx: &Context) -> CliResult<()> {
    let (h, t) = ctx.single_point("blp")?;
    let r = nm_report(&t)?;
    let rows: Vec<Vec<String>> = [
        ("N_phi", num(r.n_phi)),
        ("N_psi", num(r.n_psi)),
        ("N_blp", num(r.n_blp)),
        ("N1", num(r.n1)),
        ("twoN1", num(2.0 * r.n1)),
        ("divisible", r.divisible.to_string()),
        ("negativity_integral", num(r.negativity_integral)),
    ]
    .into_iter()
    .map(|(k, v)| vec![k.to_string(), v])
    .collect();
    for row in &rows {
        println!("{} = {}", row[0], row[1]);
    }
    ctx.emit("blp.csv", &csv_text(&h, &["quantity", "value"], &rows)?)
}

/// One evaluated scan point: its CSV row and an optional header note.
type PointResult = CliResult<(Vec<String>, Option<String>)>;

/// Evaluate every scan point in parallel and write the rows in axis order.
/// If any point fails, the successful rows go to `<stem>.partial.csv`.
fn run_scan<F>(ctx: &Context, args: &ScanArgs, stem: &str, columns: &[&str], row: F) -> CliResult<()>
where
    F: Fn(f64, &DecoherenceTable<f64>) -> PointResult + Sync,
{
    let spec = ScanSpec::from_args(args, ctx.cfg)?;
    let results: Vec<PointResult> = (0..spec.values.len())
        .into_par_iter()
        .map(|i| {
            let table = ctx.table(&spec.point(i))?;
            row(spec.values[i], &table)
        })
        .collect();

    let mut h = ctx.header(stem, &spec.fixed);
    h.push("axis", spec.axis.label());
    h.push("tau_max", ctx.global.tau_max.map_or("auto".to_string(), num));
    finish_scan(ctx, h, stem, columns, &spec, results)
}

/// Write the rows of a finished scan, or the partial file if any point
/// failed.
pub fn finish_scan(
    ctx: &Context,
    mut h: Header,
    stem: &str,
    columns: &[&str],
    spec: &ScanSpec,
    results: Vec<PointResult>,
) -> CliResult<()> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (v, r) in spec.values.iter().zip(results) {
        match r {
            Ok((row, note)) => {
                if let Some(n) = note {
                    h.push("note", format!("{} = {}: {n}", spec.axis.label(), num(*v)));
                }
                rows.push(row);
            }
            Err(e) => failures.push(format!("{} = {}: {e}", spec.axis.label(), num(*v))),
        }
    }
    if failures.is_empty() {
        return ctx.emit(&format!("{stem}.csv"), &csv_text(&h, columns, &rows)?);
    }
    for f in &failures {
        h.push("failed", f.clone());
    }
    let path = ctx.out(&format!("{stem}.partial.csv"));
    write(&path, &csv_text(&h, columns, &rows)?)?;
    Err(CliError::PartialScan { failed: failures.len(), total: spec.values.len(), first: failures[0].clone(), path })
}

pub fn scan(ctx: &Context, args: &ScanArgs) -> CliResult<()> {
    let columns = ["param", "N_phi", "N_psi", "N_blp", "N1", "twoN1", "divisible"];
    run_scan(ctx, args, "scan", &columns, |param, table| {
        let r = nm_report(table)?;
        let row = vec![
            num(param),
            num(r.n_phi),
            num(r.n_psi),
            num(r.n_blp),
            num(r.n1),
            num(2.0 * r.n1),
            r.divisible.to_string(),
        ];
        Ok((row, None))
    })
}

pub fn additivity(ctx: &Context, args: &ScanArgs) -> CliResult<()> {
    let columns = ["param", "N_phi", "N_psi", "N2", "twoN1", "factorized_prediction", "regime"];
    run_scan(ctx, args, "additivity", &columns, |param, table| {
        let bell = blp_bell_analytic(table)?;
        let a = additivity_report(table)?;
        let note = a.multi_interval.then(|| {
            format!("{} gamma1 < 0 intervals; factorized_prediction sums their contributions", a.gamma1_intervals.len())
        });
        let row = vec![
            num(param),
            num(bell.n_phi),
            num(bell.n_psi),
            num(a.n2),
            num(a.two_n1),
            num(a.factorized_prediction),
            a.regime.label().to_string(),
        ];
        Ok((row, note))
    })
}

pub fn pairs(ctx: &Context, args: &PairsArgs) -> CliResult<()> {
    if args.n_pairs == 0 {
        return Err(CliError::Usage("--n-pairs must be >= 1".into()));
    }
    let recipe = SeparableRecipe { terms: args.terms, alpha: args.alpha };
    let (mut h, t) = ctx.single_point("pairs")?;
    h.push("n_pairs", args.n_pairs.to_string())
        .push("separable_terms", args.terms.to_string())
        .push("separable_alpha", num(args.alpha));
    let scan = sampled_scan(args.n_pairs, &t, &SeededSampler::new(ctx.global.seed), &recipe)?;
    let rows: Vec<Vec<String>> = scan
        .pairs
        .iter()
        .map(|p| {
            let flag = if p.index == scan.argmax { "1" } else { "0" };
            vec![p.index.to_string(), p.category.label().to_string(), num(p.n), flag.to_string()]
        })
        .collect();
    ctx.emit("pairs.csv", &csv_text(&h, &["index", "category", "N", "argmax_flag"], &rows)?)?;

    let mut side = h.clone();
    side.push("argmax_index", scan.argmax.to_string());
    let mut columns = vec!["state".to_string()];
    columns.extend(state_columns());
    let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
    let (a, b) = &scan.argmax_pair;
    let states = [("rho1", a), ("rho2", b)]
        .into_iter()
        .map(|(name, rho)| std::iter::once(name.to_string()).chain(state_fields(rho)).collect())
        .collect::<Vec<Vec<String>>>();
    ctx.emit("pairs_argmax.csv", &csv_text(&side, &columns, &states)?)?;

    let bell = blp_bell_analytic(&t)?;
    for (cat, m) in &scan.max_by_category {
        println!("max[{}] = {}", cat.label(), num(*m));
    }
    println!("argmax = {} ({})", scan.argmax, scan.argmax_category().label());
    println!("N_blp (Bell pairs) = {}", num(bell.n_blp()));
    Ok(())
}
