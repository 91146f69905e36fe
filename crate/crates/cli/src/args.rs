use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "quadsg",
    version,
    about = "Numerical semigroups generated by n*a + C(n,2)*b",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

#[derive(Clone, Copy, Debug, Args)]
pub struct Pair {
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub b: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// μ(n) from the memoized recursion
    Mu {
        #[arg(long)]
        n: u64,
        /// Recompute with the exhaustive search and fail on disagreement
        #[arg(long)]
        oracle: bool,
    },
    /// μ(n) against its three closed-form bounds for n = 1..=n_max
    Bounds {
        #[arg(long, default_value_t = 2000)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Generators of S(a,b)
    Semigroup {
        #[command(flatten)]
        pair: Pair,
        /// List y_0 through y_last
        #[arg(long, default_value_t = 10)]
        last: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apéry set of S(a,b) with respect to a
    Apery {
        #[command(flatten)]
        pair: Pair,
        /// Brute force instead of the closed form
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Frobenius number (-1 for N0)
    Frobenius {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        oracle: bool,
    },
    /// Number of gaps
    Genus {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        oracle: bool,
    },
    /// F, g and their bounds for one pair, or a CSV sweep over a grid
    Invariants(InvariantsArgs),
    /// Minimal generators and embedding dimension
    Embedding {
        #[command(flatten)]
        pair: Pair,
        /// Brute force instead of the closed form
        #[arg(long)]
        oracle: bool,
        /// Compare closed form and brute force; exit 2 on mismatch
        #[arg(long, conflicts_with = "oracle")]
        certify: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exhaustive searches over a
    Search {
        #[arg(value_enum)]
        kind: SearchKind,
        /// Defaults to 485 for mu-drop and 655 for embedding-eq
        #[arg(long)]
        a_max: Option<u64>,
        /// embedding-eq only: drop the side constraints and diff against the table
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Local maximum and level crossings of the bound-gap function g(a)
    GAnalysis {
        /// Emit samples of g instead of the summary
        #[arg(long)]
        curve: bool,
        #[arg(long, default_value_t = 2.0)]
        lo: f64,
        #[arg(long, default_value_t = 1000.0)]
        hi: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Replay every tabulated exception and both searches; exit 2 on failure
    Certify {
        /// Run everything (the default when no table is named)
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, conflicts_with = "all")]
        table: Option<CertifyTable>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Membership of (m, n) in the lifting monoid T, as CSV
    Tgrid {
        #[arg(long, default_value_t = 50)]
        m_max: u64,
        #[arg(long, default_value_t = 50)]
        n_max: u64,
    },
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long, requires = "b", conflicts_with_all = ["a_max", "b_max"])]
    pub a: Option<u64>,
    #[arg(long, requires = "a")]
    pub b: Option<u64>,
    /// Sweep all coprime pairs with 2 <= a <= a_max
    #[arg(long, requires = "b_max")]
    pub a_max: Option<u64>,
    /// Sweep all coprime pairs with 1 <= b <= b_max
    #[arg(long, requires = "a_max")]
    pub b_max: Option<u64>,
    /// Defaults to json for one pair and csv for a sweep
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchKind {
    MuDrop,
    EmbeddingEq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CertifyTable {
    MuExceptions,
    EmbeddingEq,
    ExceptionalGenerators,
    Searches,
}
