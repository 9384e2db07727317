use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "sts",
    version,
    about = "Steiner triple systems: build, analyze, color, sample"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Subcommand)]
pub enum Commands {
    /// Build a Steiner triple system and write it in the text format.
    Gen(GenArgs),
    /// Compute parameters of a system file and emit a JSON report.
    Analyze(AnalyzeArgs),
    /// Build an explicit edge coloring of a system file.
    Color(ColorArgs),
    /// Sample a random triple system.
    Random(RandomArgs),
    /// Seeded experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionKind {
    Fano,
    S9,
    Bose,
    Skolem,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub construction: ConstructionKind,
    /// Order; required for bose and skolem.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Build Bose systems from a random idempotent commutative quasigroup with this seed.
    #[arg(long)]
    pub quasigroup_seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Param {
    Alpha,
    AlphaStar3,
    Mc3,
    All,
}

#[derive(Args, Clone)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 100_000_000)]
    pub max_nodes: u64,
    #[arg(long, default_value_t = 60.0)]
    pub max_seconds: f64,
    /// Worker threads.
    #[arg(long, env = "STS_JOBS", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub param: Param,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Include wall-clock times in the report.
    #[arg(long)]
    pub timing: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Hole,
    Bose,
    Skolem,
    Bicolor,
}

#[derive(Args)]
pub struct ColorArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub scheme: Scheme,
    /// Coloring file to write; without it the coloring goes to stdout and
    /// the summary to stderr.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// JSON hole certificate to use instead of searching for one.
    #[arg(long)]
    pub hole_file: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Process {
    /// Remove `m` uniformly random triangles from the complete graph.
    TriangleRemoval,
    /// Keep each triple independently with probability `p`.
    Binomial,
    /// A binomial 3-graph with every conflicting pair of triples removed.
    Linearized,
    /// A full random Steiner triple system.
    Sts,
}

#[derive(Args)]
pub struct RandomArgs {
    #[arg(long, value_enum)]
    pub process: Process,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_restarts: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum ExperimentCommand {
    /// α*₃ of half-complete removal processes and full random systems.
    Discrepancy(DiscrepancyArgs),
    /// The (M_k, M_k, N_k) class-size sequence of iterated bicoloring products.
    Cdr(CdrArgs),
}

#[derive(Args)]
pub struct DiscrepancyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Fill the `seconds` column.
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args)]
pub struct CdrArgs {
    #[arg(long, default_value_t = 12)]
    pub kmax: usize,
    #[arg(long)]
    pub json: bool,
}
