use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "branchkit", version, about = "Stable branching multiplicities for classical symmetric pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One branching multiplicity.
    Branch(BranchArgs),
    /// All nonzero multiplicities of a G label restricted to H.
    Decompose(DecomposeArgs),
    /// A Littlewood-Richardson coefficient.
    Lr(LrArgs),
    /// Compare each rule against the character oracle on exhaustive grids.
    Verify(VerifyArgs),
    /// Quick end-to-end check of known values.
    Selftest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Pair identifier, e.g. o-in-gl or gl-diag.
    #[arg(long)]
    pub pair: String,
    /// Rank n of the pair.
    #[arg(short = 'n')]
    pub n: usize,
    /// Second rank m (direct-sum pairs only).
    #[arg(short = 'm')]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Evaluate the formula even outside the stable range.
    #[arg(long = "unsafe")]
    pub unsafe_eval: bool,
}

#[derive(Debug, Args)]
pub struct BranchArgs {
    #[command(flatten)]
    pub common: PairArgs,
    /// G labels; for diagonal pairs, the single H label λ.
    #[arg(long, num_args = 1.., required = true)]
    pub big: Vec<String>,
    /// H labels; for diagonal pairs, the two G labels μ ν.
    #[arg(long, num_args = 1.., required = true)]
    pub small: Vec<String>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub common: PairArgs,
    /// G label (non-diagonal pairs).
    #[arg(long, num_args = 1..)]
    pub big: Vec<String>,
    /// First tensor factor (diagonal pairs).
    #[arg(long)]
    pub mu: Option<String>,
    /// Second tensor factor (diagonal pairs).
    #[arg(long)]
    pub nu: Option<String>,
    /// Largest total size of H labels to try.
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LrArgs {
    #[arg(long)]
    pub outer: String,
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Pair identifier or "all".
    #[arg(long)]
    pub pair: String,
    /// Largest label size in the grid.
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    /// Seed for a sampled run.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of sampled cases instead of the full grid.
    #[arg(long)]
    pub samples: Option<usize>,
}
