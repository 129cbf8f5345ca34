// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: configuration, parameter scans, CSV output and
//! SVG rendering.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod plot;
pub mod scan;

pub use args::Cli;
pub use error::{CliError, CliResult};

use args::Command;
use commands::Context;

/// Run one parsed invocation.
pub fn run(cli: &Cli) -> CliResult<()> {
    if let Some(jobs) = cli.global.jobs {
        // Fails only if a pool already exists, which keeps its own size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build_global();
    }
    if let Command::Plot(p) = &cli.command {
        return plot::plot_file(&p.input, p.kind, &cli.global.out);
    }
    let ctx = Context::new(&cli.global)?;
    match &cli.command {
        Command::Rates => commands::rates(&ctx),
        Command::Evolve { state } => commands::evolve(&ctx, *state),
        Command::Divisibility => commands::divisibility(&ctx),
        Command::Blp => commands::blp(&ctx),
        Command::Scan(a) => commands::scan(&ctx, a),
        Command::Pairs(a) => commands::pairs(&ctx, a),
        Command::Additivity(a) => commands::additivity(&ctx, a),
        Command::Plot(_) => unreachable!("handled above"),
    }
}
