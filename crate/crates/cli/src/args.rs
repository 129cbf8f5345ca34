// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dephasim_core::spectral::{DEFAULT_HORIZON_ETA, DEFAULT_STEPS, DEFAULT_TOL};

/// Two dephasing qubits in a shared Bogoliubov environment.
#[derive(Debug, Parser)]
#[command(name = "dephasim", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Parameter file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Override one parameter, e.g. `--set D_over_L=4`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub set: Vec<String>,

    /// Seed of the pair sampler.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Relative tolerance of the rate quadrature.
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    pub tol: f64,

    /// Worker threads (default: all available cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,

    /// Output directory.
    #[arg(long, default_value = ".", global = true)]
    pub out: PathBuf,

    /// End of the time grid in reduced units (default: automatic horizon).
    #[arg(long, global = true)]
    pub tau_max: Option<f64>,

    /// Number of grid steps.
    #[arg(long, default_value_t = DEFAULT_STEPS as u32, global = true, value_parser = clap::value_parser!(u32).range(64..))]
    pub n_steps: u32,

    /// Relative threshold of the automatic horizon.
    #[arg(long, default_value_t = DEFAULT_HORIZON_ETA, global = true)]
    pub eta: f64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decay rates on the time grid.
    Rates,
    /// Density matrix of one initial state along the time grid.
    Evolve {
        #[arg(long, value_enum, default_value_t = InitialState::PhiPlus)]
        state: InitialState,
    },
    /// Negativity intervals of the decay rates.
    Divisibility,
    /// Backflow measures of one parameter point.
    Blp,
    /// Backflow measures over a parameter axis.
    Scan(ScanArgs),
    /// Backflow of seeded random state pairs.
    Pairs(PairsArgs),
    /// Two-qubit against single-qubit backflow over a parameter axis.
    Additivity(ScanArgs),
    /// Render a CSV produced by this tool as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitialState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
    PlusPlus,
    RandomPure,
    RandomMixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    #[value(name = "D_over_L")]
    DOverL,
    #[value(name = "aB_over_aRb")]
    ABOverARb,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Self::DOverL => "D_over_L",
            Self::ABOverARb => "aB_over_aRb",
        }
    }

    /// Configuration key set by this axis.
    pub fn config_key(self) -> &'static str {
        match self {
            Self::DOverL => "D_over_L",
            Self::ABOverARb => "a_B_over_aRb",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum, default_value_t = Axis::DOverL)]
    pub axis: Axis,

    /// Explicit axis values, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "range")]
    pub values: Vec<f64>,

    /// `MIN,MAX,COUNT[,linear|log]`.
    #[arg(long)]
    pub range: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PairsArgs {
    #[arg(long, default_value_t = 20_000)]
    pub n_pairs: usize,

    /// Pure product states per separable mixture.
    #[arg(long, default_value_t = 4)]
    pub terms: usize,

    /// Dirichlet concentration of the separable mixture weights.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Rates,
    Scan,
    Pairs,
    Additivity,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    /// CSV file to render.
    pub input: PathBuf,

    #[arg(long, value_enum)]
    pub kind: PlotKind,
}
