use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "dpcover", version, about = "Count colorings of full m-fold covers and search for extremal covers")]
pub struct Cli {
    /// Output format for the payload on stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest edge count for which 2^t-term inclusion-exclusion sums run.
    #[arg(long, env = "DPCOVER_SUBSET_LIMIT", global = true)]
    pub subset_limit: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the closed-form K4 maximum against exhaustive search (m <= 5)
    /// and the extremal constructions (m >= 6).
    #[command(name = "verify-thm3")]
    VerifyThm3(VerifyArgs),
    /// Search the covers of a graph for the most and fewest colorings.
    Search(SearchArgs),
    /// Count the colorings of one cover.
    Count(CountArgs),
    /// Count proper colorings of a signed graph.
    Signed(SignedArgs),
    /// Evaluate the K_n approximation and its error bounds.
    Bounds(BoundsArgs),
    /// Emit a cover file for a built-in construction.
    Construct(ConstructArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyThm3(_) => "verify-thm3",
            Command::Search(_) => "search",
            Command::Count(_) => "count",
            Command::Signed(_) => "signed",
            Command::Bounds(_) => "bounds",
            Command::Construct(_) => "construct",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Largest fold to check.
    #[arg(long, default_value_t = 5)]
    pub m_max: usize,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Maximum covers per exhaustive search.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Max,
    Min,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReduceArg {
    Conjugacy,
    None,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizeArg {
    Star,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CounterArg {
    Auto,
    Brute,
    Ie,
    K4,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    /// Graph file or built-in name `K1`..`K8`.
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    #[arg(long = "reduce", value_enum, default_value_t = ReduceArg::None)]
    pub reduce: ReduceArg,
    #[arg(long, value_enum, default_value_t = NormalizeArg::Star)]
    pub normalize: NormalizeArg,
    /// Root vertex (1-indexed) for star normalization.
    #[arg(long, default_value_t = 1)]
    pub root: usize,
    #[arg(long, value_enum, default_value_t = CounterArg::Auto)]
    pub counter: CounterArg,
    /// Evaluate this many random covers instead of the full space.
    #[arg(long, requires = "seed")]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Maximum covers to evaluate exhaustively.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Report how many covers attain each count.
    #[arg(long)]
    pub histogram: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructKind {
    EvenPairing,
    OddK4,
    OddKn,
    Extremal,
    Canonical,
    Random,
}

#[derive(Debug, Args, Serialize)]
pub struct CoverSource {
    /// Cover file (requires --graph).
    #[arg(long, requires = "graph", conflicts_with = "construct")]
    pub cover: Option<PathBuf>,
    /// Graph file or built-in name; also the base graph for canonical and
    /// random constructions.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long, value_enum, required_unless_present = "cover")]
    pub construct: Option<ConstructKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Seed for the random construction.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountCounter {
    Auto,
    Brute,
    Ie,
    K4,
    /// Every applicable counter, which must agree.
    All,
}

#[derive(Debug, Args, Serialize)]
pub struct CountArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: CoverSource,
    #[arg(long, value_enum, default_value_t = CountCounter::Auto)]
    pub counter: CountCounter,
    /// Same as `--counter all`.
    #[arg(long, conflicts_with = "counter")]
    pub all: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SignedArgs {
    /// Order of the all-negative complete graph.
    #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
    pub n: Option<usize>,
    /// Signed graph file (unsigned edges default to +1).
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub lambda: u32,
    /// Also report the K4 closed-form maximum at m = lambda.
    #[arg(long)]
    pub compare_dual: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    /// Count the extremal construction and test it against the bounds.
    #[arg(long)]
    pub check_construction: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ConstructArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: CoverSource,
    /// Also write the cover file here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
