use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "dihom",
    version,
    about = "Directed homology of finite simplicially enriched categories"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the simplicial identities and the enriched-category axioms.
    Validate(JobArgs),
    /// Homology bimodules with their induced actions.
    Homology(JobArgs),
    /// Extended and relative chains, the long exact sequence and the transfer map.
    Relative(JobArgs),
    /// Path algebra (or `algebra.v1` input): units, idempotency, unitalization.
    Algebra(JobArgs),
    /// Invariant suite on the bundled corpus.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// `enriched-category.v1` document (or `algebra.v1` for `algebra`).
    #[arg(long)]
    pub input: PathBuf,
    /// Coefficient ring: `z`, `q` or `fp:P`.
    #[arg(long, default_value = "z")]
    pub ring: String,
    /// Truncation dimension D, overriding the document.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Degrees as `a..b` (inclusive) or a single degree; at most D-1.
    #[arg(long)]
    pub degrees: Option<String>,
    /// Objects of the full subcategory T, comma separated; empty for T = ∅.
    #[arg(long)]
    pub sub: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Only corpus entries and pairs whose name starts with one of these.
    #[arg(long, value_delimiter = ',')]
    pub subset: Vec<String>,
    /// Extra category documents to include in the suite.
    #[arg(long)]
    pub input: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}
