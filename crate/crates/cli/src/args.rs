use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use viforge_core::Algorithm;

#[derive(Debug, Parser)]
#[command(name = "viforge", version, about = "Projection solvers for variational inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one benchmark problem and write its trace.
    Run(RunArgs),
    /// Run the benchmark grid and write the comparison tables.
    Bench(BenchArgs),
    /// Sparse signal recovery on a seeded synthetic instance.
    Signal(SignalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Exm1,
    Exm2,
    Exm3,
    Exm4,
    Lasso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Momentum,
    Simpleproj,
    Eg,
    Popov,
    Seg,
    Agraal,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Momentum => Algorithm::Momentum,
            AlgoArg::Simpleproj => Algorithm::SimpleProjection,
            AlgoArg::Eg => Algorithm::Extragradient,
            AlgoArg::Popov => Algorithm::Popov,
            AlgoArg::Seg => Algorithm::SubgradientExtragradient,
            AlgoArg::Agraal => Algorithm::AdaptiveGoldenRatio,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=4))]
    pub case: u32,
    #[arg(long, value_enum, default_value = "momentum")]
    pub algo: AlgoArg,
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,
    #[arg(long, default_value_t = 5000)]
    pub max_iter: usize,
    #[arg(long, env = "VIFORGE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Output directory for `trace.csv` and `summary.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Dimension for exm3 (default: 50, 80, 100, 200 for cases 1..4).
    #[arg(long)]
    pub m: Option<usize>,
    /// Truncation dimension for exm4.
    #[arg(long, default_value_t = viforge_core::problems::DEFAULT_TRUNC_DIM)]
    pub trunc_dim: usize,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Sets both initial step sizes.
    #[arg(long)]
    pub lambda0: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "paper")]
    pub suite: Suite,
    #[arg(long, default_value = "results.json")]
    pub out: PathBuf,
    #[arg(long, default_value = "tables.csv")]
    pub csv: PathBuf,
    #[arg(long, env = "VIFORGE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated subset of exm1..exm4.
    #[arg(long, value_delimiter = ',', default_value = "exm1,exm2,exm3,exm4")]
    pub problems: Vec<String>,
    /// Also run eg, popov, seg and agraal.
    #[arg(long)]
    pub with_baselines: bool,
    /// Directory for one trace CSV per run.
    #[arg(long)]
    pub trace_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SignalArgs {
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 512)]
    pub m: usize,
    #[arg(long, default_value_t = 60)]
    pub sparsity: usize,
    #[arg(long, default_value_t = 60.0)]
    pub l: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub noise: f64,
    #[arg(long, env = "VIFORGE_SEED", default_value_t = 7)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "momentum")]
    pub algo: AlgoArg,
    /// Output directory for `mse.csv`, `recovered.json` and `instance.json`.
    #[arg(long, default_value = "signal-out")]
    pub out: PathBuf,
}
