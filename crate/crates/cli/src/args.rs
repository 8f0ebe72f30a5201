use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bipartify",
    version,
    about = "Largest bipartite subgraph heuristics and experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run partition and edge-removal methods on one graph.
    Analyze(AnalyzeArgs),
    /// Sample a graph from one of the random models.
    Generate(GenerateArgs),
    /// Run a reproduction sweep and write records, summary and plots.
    Experiment(ExperimentArgs),
    /// Exact maximum cut by exhaustive search (n <= 26).
    Oracle(OracleArgs),
    /// Per-edge bipartivity scores.
    ScoreEdges(ScoreArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// Master seed; drawn from entropy and printed to stderr when absent.
    #[arg(long, env = "BIPARTIFY_SEED")]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Edge-list file.
    pub input: PathBuf,
    /// Comma-separated method names, or `all`.
    #[arg(long, default_value = "all")]
    pub methods: String,
    #[arg(long, default_value_t = 100)]
    pub restarts: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// One of er, ws, rg, ba.
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// Edge probability (er). Omit every model parameter to sample one
    /// from the experiment ranges and keep only connected non-bipartite
    /// graphs.
    #[arg(long)]
    pub p: Option<f64>,
    /// Rewiring probability (ws).
    #[arg(long)]
    pub psi: Option<f64>,
    /// Lattice degree (ws).
    #[arg(long)]
    pub k: Option<usize>,
    /// Connection radius (rg).
    #[arg(long)]
    pub r: Option<f64>,
    /// Edges per arriving vertex (ba).
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Every field is optional so that a config file can fill the gaps; flags
/// given on the command line win.
#[derive(Debug, Default, Args)]
pub struct ExperimentArgs {
    /// Flat `key = value` file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated subset of er, ws, rg, ba, or `all`.
    #[arg(long)]
    pub models: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub instances: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Comma-separated method names, or `all`.
    #[arg(long)]
    pub methods: Option<String>,
    #[arg(long, env = "BIPARTIFY_SEED")]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Histogram bins over [0.5, 1].
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub include_greedy: Option<bool>,
    /// Comma-separated subset of csv, json, svg.
    #[arg(long)]
    pub format: Option<String>,
    /// Record wall-clock time per method (makes outputs run-dependent).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub timings: Option<bool>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    pub input: PathBuf,
    /// One of beta, phi-a, phi-nl.
    #[arg(long, default_value = "phi-nl")]
    pub index: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}
