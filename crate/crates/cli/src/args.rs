use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hkpr", version, about = "Heat kernel pagerank and local clustering experiments")]
pub struct Cli {
    /// Worker threads. Output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one heat kernel pagerank vector, exactly or by sampling.
    Hkpr(HkprArgs),
    /// Compare sampled against exact vectors across walk-length caps.
    RankExperiment(RankArgs),
    /// Run the local clustering algorithm from a seed vertex.
    Cluster(ClusterArgs),
    /// Sweep sampled heat kernel, exact heat kernel and PageRank vectors.
    Compare(CompareArgs),
    /// Write a random graph as an edge list.
    Gen(GenArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelArg {
    Ws,
    Ba,
    Plc,
}

impl ModelArg {
    pub fn name(self) -> &'static str {
        match self {
            ModelArg::Ws => "ws",
            ModelArg::Ba => "ba",
            ModelArg::Plc => "plc",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedSelect {
    /// Pick the seed vertex with probability proportional to its degree.
    Degree,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepModeArg {
    #[default]
    Window,
    Half,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Edge-list file, one `u v` pair per line.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    pub graph: Option<PathBuf>,

    /// Random graph model used instead of a file.
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,

    #[arg(long, default_value_t = 100)]
    pub n: usize,

    #[arg(long, default_value_t = 5)]
    pub d: usize,

    #[arg(long, default_value_t = 0.1)]
    pub p: f64,
}

#[derive(Args, Debug, Clone)]
pub struct SeedArgs {
    /// Seed vertex label. Without it a vertex is drawn by degree.
    #[arg(long, conflicts_with = "seed_select")]
    pub seed_vertex: Option<String>,

    #[arg(long, value_enum)]
    pub seed_select: Option<SeedSelect>,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Master seed; every random choice derives from it.
    #[arg(long, env = "HKPR_RNG_SEED", default_value_t = 0)]
    pub rng_seed: u64,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Add a wall-clock column. Timed output is not reproducible.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SamplingArgs {
    /// Error parameter ε.
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,

    /// Walk-length cap; defaults from ε.
    #[arg(long = "K")]
    pub k: Option<u64>,

    /// Number of sampled walks; defaults from ε and n.
    #[arg(long)]
    pub r: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct HkprArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub run: RunArgs,

    /// Temperature t.
    #[arg(long)]
    pub t: f64,

    /// Compute the vector exactly.
    #[arg(long, conflicts_with = "approx")]
    pub exact: bool,

    /// Sample the vector (the default).
    #[arg(long)]
    pub approx: bool,

    /// Truncation tolerance of the exact series.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Args, Debug, Clone)]
pub struct RankArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[command(flatten)]
    pub run: RunArgs,

    #[arg(long, default_value_t = 84.9)]
    pub t: f64,

    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,

    /// Walk-length caps to compare, comma separated. Defaults to
    /// log-spaced values up to ⌈t⌉.
    #[arg(long = "K", value_delimiter = ',')]
    pub k: Vec<u64>,

    #[arg(long)]
    pub r: Option<u64>,

    #[arg(long, default_value_t = 20)]
    pub trials: usize,

    /// Prefix length of the top-k intersection difference.
    #[arg(long, default_value_t = 10)]
    pub top_k: usize,

    /// Also emit an exact-versus-exact row per trial.
    #[arg(long)]
    pub control: bool,
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    /// Target Cheeger ratio φ.
    #[arg(long)]
    pub phi: f64,

    /// Target cluster size s.
    #[arg(long)]
    pub target_size: usize,

    /// Target cluster volume ς.
    #[arg(long)]
    pub target_volume: u64,

    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub run: RunArgs,

    #[arg(long, value_enum, default_value_t = SweepModeArg::Window)]
    pub sweep_mode: SweepModeArg,
}

#[derive(Args, Debug, Clone)]
pub struct CompareArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[command(flatten)]
    pub target: TargetArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,

    #[arg(long, default_value_t = 100)]
    pub n: usize,

    #[arg(long, default_value_t = 5)]
    pub d: usize,

    #[arg(long, default_value_t = 0.1)]
    pub p: f64,

    #[arg(long, env = "HKPR_RNG_SEED", default_value_t = 0)]
    pub rng_seed: u64,

    #[arg(long)]
    pub out: Option<PathBuf>,
}
