use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdecode::oracle::{ProbabilityModel, WeightModel};

#[derive(Debug, Parser)]
#[command(
    name = "qdecode",
    version,
    about = "Syndrome decoders for quantum stabilizer codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo word error rates, one row per (decoder, p).
    Simulate(SimulateArgs),
    /// Decode every error of one weight and list the failures.
    Enumerate(EnumerateArgs),
    /// Distances, witnesses and first failures of the exact decoders.
    Verify(VerifyArgs),
    /// Decode a single error or syndrome.
    DecodeOne(DecodeOneArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Depolarizing,
    TwoBsc,
}

impl From<ModelArg> for ProbabilityModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Depolarizing => ProbabilityModel::Depolarizing,
            ModelArg::TwoBsc => ProbabilityModel::TwoBsc,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightModelArg {
    Pauli,
    Binary,
}

impl From<WeightModelArg> for WeightModel {
    fn from(m: WeightModelArg) -> Self {
        match m {
            WeightModelArg::Pauli => WeightModel::Pauli,
            WeightModelArg::Binary => WeightModel::Binary,
        }
    }
}

fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got `{text}`"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number `{a}`"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number `{b}`"))?;
    Ok((a, b))
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// toric:L, bicycle:n,k,w,seed or file:path
    #[arg(long)]
    pub code: String,
    /// Depolarizing probability (comma-separated list for simulate).
    /// Defaults to 0.01, or 0.001 for verify.
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 0.0)]
    pub damping: f64,
    #[arg(long, default_value_t = 10)]
    pub imr_trials: usize,
    #[arg(long, value_parser = parse_range, default_value = "0.5,1.5")]
    pub imr_range: (f64, f64),
    #[arg(long, value_parser = parse_range, default_value = "0.8,1.0")]
    pub rr_range: (f64, f64),
    #[arg(long, default_value_t = 10)]
    pub rr_trials: usize,
    /// Largest weight the table-based ML decoders consider.
    #[arg(long, default_value_t = 3)]
    pub ml_weight_cap: usize,
    #[arg(long, value_enum, default_value = "depolarizing")]
    pub ml_model: ModelArg,
    /// Most candidates an exhaustive search may visit.
    #[arg(long, default_value_t = qdecode::oracle::DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Same as --format json.
    #[arg(long)]
    pub json: bool,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Decoder names, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "spa")]
    pub decoder: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value = "spa")]
    pub decoder: String,
    #[arg(long)]
    pub weight: usize,
    #[arg(long, value_enum, default_value = "pauli")]
    pub weight_model: WeightModelArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Give up the distance search beyond this weight.
    #[arg(long, default_value_t = 8)]
    pub max_weight: usize,
}

#[derive(Debug, Args)]
pub struct DecodeOneArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value = "spa")]
    pub decoder: String,
    /// Error in sparse notation, e.g. "3:X 7:Z".
    #[arg(
        long,
        conflicts_with = "syndrome",
        required_unless_present = "syndrome"
    )]
    pub error: Option<String>,
    /// Comma-separated indices of the unsatisfied checks.
    #[arg(long, value_delimiter = ',')]
    pub syndrome: Option<Vec<usize>>,
}
