use std::path::PathBuf;

use abc_spectra::enumerate::{ClassName, OrderRange};
use abc_spectra::experiments::DEFAULT_TOL;
use abc_spectra::graph::Family;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "abc-spectra", version, about = "ABC spectral radius: invariants, bounds and exhaustive checks over small graph classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Tolerance for inequality and equality checks.
    #[arg(long, default_value_t = DEFAULT_TOL, global = true)]
    pub tol: f64,

    /// More progress output on stderr (repeatable).
    #[arg(long, short, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Per-graph invariants: ABC index, R₋₁, ρ, Estrada bounds, θ, θ′.
    Compute {
        #[command(flatten)]
        input: Input,
        /// Include the Perron vector.
        #[arg(long)]
        perron: bool,
    },
    /// Every applicable upper bound per graph, with slack against ρ.
    Bounds {
        #[command(flatten)]
        input: Input,
    },
    /// Check a proved statement over a class; exit 1 on any violation.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        input: Input,
    },
    /// Graphs attaining θ(n, m, Δ).
    Search {
        /// List the graphs with ρ = θ within tolerance.
        #[arg(long, required = true)]
        attainers: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Rank a class by ρ.
    Order {
        #[command(flatten)]
        input: Input,
    },
    /// Exploratory probes of open questions.
    Probe {
        #[arg(long, value_enum)]
        question: Question,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args, Debug, Clone)]
#[group(skip)]
pub struct Input {
    /// Newline-delimited graph6 file.
    #[arg(group = "source")]
    pub file: Option<PathBuf>,

    /// Named family, e.g. `cycle:8`, `double_star:3,1`, `petersen`.
    #[arg(long, group = "source")]
    pub family: Option<Family>,

    /// Enumerated class: trees, connected, unicyclic, c-cyclic, trees-max-degree.
    #[arg(long, group = "source", requires = "n")]
    pub class: Option<ClassName>,

    /// Order or inclusive range of orders, e.g. `6` or `4..7`.
    #[arg(long)]
    pub n: Option<OrderRange>,

    /// Cyclomatic number for `c-cyclic`.
    #[arg(long)]
    pub c: Option<usize>,

    /// Maximum degree for `trees-max-degree`.
    #[arg(long)]
    pub delta: Option<usize>,

    /// Edge count for `connected`.
    #[arg(long)]
    pub m: Option<usize>,
}

impl Input {
    pub fn has_source(&self) -> bool {
        self.file.is_some() || self.family.is_some() || self.class.is_some()
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// ρ ≤ θ(n, m, Δ) on connected graphs.
    #[value(name = "thm2.1")]
    Thm2_1,
    /// ρ ≤ √(n − 2 + 2c/(n − 1)) on c-cyclic graphs with c ≤ (n − 1)/2.
    #[value(name = "cor2.2")]
    Cor2_2,
    /// ρ ≤ θ′(n, m, Δ).
    #[value(name = "cor2.3")]
    Cor2_3,
    /// ρ ≤ √(2n − 4), equality only at Kₙ.
    #[value(name = "cor2.4")]
    Cor2_4,
    /// (2/n)·ABC ≤ ρ ≤ max row sum.
    #[value(name = "estrada")]
    Estrada,
    /// Tree extremes: path minimum, star maximum.
    #[value(name = "lem1.1")]
    Lem1_1,
    /// Connected extremes: path minimum, complete-graph maximum.
    #[value(name = "lem1.2")]
    Lem1_2,
    /// Unicyclic extremes: cycle minimum, star-plus-edge maximum.
    #[value(name = "lem1.3")]
    Lem1_3,
    /// ρ(S_{n−3,1}) > √(n − 3.5) and Δ = n − 3 trees below it.
    #[value(name = "lem3.3", alias = "lem3.4")]
    Lem3_3,
    /// Star first, S_{n−3,1} second among trees.
    #[value(name = "thm3.1")]
    Thm3_1,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Question {
    /// Least Δ threshold above which larger Δ forces larger ρ.
    #[value(name = "q4.2")]
    Q4_2,
}
