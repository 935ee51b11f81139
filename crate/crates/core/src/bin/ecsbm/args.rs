use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ecsbm::kecssn::VertexOrder;
use ecsbm::stats::StatSelection;
use ecsbm::{Mode, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "ecsbm", version, about = "Edge-connectivity preserving synthetic network generator")]
pub struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "ECSBM_THREADS", default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the block-model parameters and per-cluster connectivity targets.
    Extract(ExtractArgs),
    /// Generate a synthetic network and clustering.
    Generate(GenerateArgs),
    /// Compare statistics of an empirical and a synthetic pair.
    Evaluate(EvaluateArgs),
    /// Report disconnected clusters and excess edges of a plain block-model sample.
    Diagnose(DiagnoseArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Edge list TSV.
    #[arg(long)]
    pub network: PathBuf,
    /// Clustering TSV; nodes missing from it are outliers.
    #[arg(long)]
    pub clustering: PathBuf,
    /// Drop self-loops and duplicate edges instead of rejecting the input.
    #[arg(long)]
    pub coerce_simple: bool,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Ecsbm,
    Sbm,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Ecsbm => Mode::Ecsbm,
            ModeArg::Sbm => Mode::Sbm,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    /// Decreasing target degree.
    Degree,
    /// Ascending vertex id.
    Id,
    Random,
}

impl From<OrderArg> for VertexOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Degree => VertexOrder::DegreeDescending,
            OrderArg::Id => VertexOrder::VertexId,
            OrderArg::Random => VertexOrder::Random,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "ecsbm")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output files are `<prefix>.edges.tsv`, `<prefix>.clustering.tsv` and
    /// `<prefix>.provenance.json`.
    #[arg(long)]
    pub out_prefix: PathBuf,
    #[arg(long, value_enum, default_value = "degree")]
    pub kecssn_order: OrderArg,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub synthetic_network: PathBuf,
    #[arg(long)]
    pub synthetic_clustering: PathBuf,
    /// Comma-separated statistics, or `all`.
    #[arg(long, default_value = "all")]
    pub stats: StatSelection,
    /// Distance report JSON.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the per-entry sequences as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Leave outliers out of the mixing parameter sequence.
    #[arg(long)]
    pub exclude_outliers: bool,
    /// Compute in single precision.
    #[arg(long)]
    pub f32: bool,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}
