use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skewbrace::Limits;

#[derive(Debug, Clone, Parser)]
#[command(name = "skewbrace", version, about = "Skew braces, stable subgroups and Galois correspondence ratios")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Largest group order that will be tabulated or enumerated.
    #[arg(long, global = true, env = "BRACE_ORDER_CAP", default_value_t = 2000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub order_cap: u64,
    /// Largest automorphism group that will be enumerated.
    #[arg(long, global = true, env = "BRACE_AUT_CAP", default_value_t = 200,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub aut_cap: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized mutation checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Largest number of subspaces enumerated when listing ideals.
    #[arg(long, global = true, default_value_t = 100_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub subspace_budget: u64,
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            order_cap: self.order_cap as usize,
            aut_cap: self.aut_cap as usize,
            ..Limits::default()
        }
    }

    pub fn budget(&self) -> usize {
        self.subspace_budget as usize
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        let limits = Limits::default();
        RunConfig {
            order_cap: limits.order_cap as u64,
            aut_cap: limits.aut_cap as u64,
            jobs: None,
            format: Format::Text,
            seed: 0,
            timing: false,
            subspace_budget: 100_000,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Validate a brace or algebra file.
    Verify(VerifyArgs),
    /// Galois correspondence ratio of a brace.
    Ratio(RatioArgs),
    /// Left or right ideals of an algebra, grouped by pivot pattern.
    Ideals(IdealsArgs),
    /// Regression table over the worked examples.
    PaperExamples(PaperArgs),
    /// Closed-form counts against enumeration for semidirect families.
    Family(FamilyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Ratio(_) => "ratio",
            Command::Ideals(_) => "ideals",
            Command::PaperExamples(_) => "paper-examples",
            Command::Family(_) => "family",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// JSON algebra or brace file.
    pub file: PathBuf,
    /// Number of random single-entry mutations of the circle table to check.
    #[arg(long, default_value_t = 0)]
    pub mutations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    /// `∘` is the circle or multiplicative operation.
    Circ,
    /// `∘` is addition.
    Add,
    Both,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RatioArgs {
    /// Family tag, or `semidirect` for an unchecked Z/m ⋊ Z/n.
    #[arg(long, group = "source")]
    pub family: Option<String>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub b: Option<u64>,
    /// `degraaf`, `zero` or a JSON algebra file.
    #[arg(long, group = "source")]
    pub algebra: Option<String>,
    #[arg(long)]
    pub p: Option<u32>,
    /// Dimension for `--algebra zero`.
    #[arg(long)]
    pub dim: Option<usize>,
    /// `a5`, or `perm` with `--degree`, `--gens`, `--left` and `--right`.
    #[arg(long, group = "source")]
    pub zappa_szep: Option<String>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Cycle-notation generators separated by `;`.
    #[arg(long, value_delimiter = ';')]
    pub gens: Vec<String>,
    #[arg(long, value_delimiter = ';')]
    pub left: Vec<String>,
    #[arg(long, value_delimiter = ';')]
    pub right: Vec<String>,
    /// JSON brace file.
    #[arg(long, group = "source")]
    pub brace: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub direction: Option<Direction>,
    /// Omit the stable subgroup listing.
    #[arg(long)]
    pub counts_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct IdealsArgs {
    /// `degraaf`, `zero` or a JSON algebra file.
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, default_value_t = Side::Left)]
    pub side: Side,
}

#[derive(Debug, Clone, Args)]
pub struct PaperArgs {
    /// Primes for the algebra rows.
    #[arg(long, num_args = 1.., default_values_t = [3u32])]
    pub p: Vec<u32>,
    /// Extra family grids such as `dihedral m=15,105`.
    #[arg(long, num_args = 1..)]
    pub grid: Vec<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    /// File with one `family=.. m=.. n=.. b=..` spec per line.
    #[arg(long, conflicts_with_all = ["family", "m", "n", "b"])]
    pub batch: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
    /// One or more values of m, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub b: Option<u64>,
}
