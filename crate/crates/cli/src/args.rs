use std::path::PathBuf;
use std::time::Duration;

use apcrucial::constructions::Family;
use apcrucial::search::{SearchBudget, SearchConfig, SearchKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "apcrucial", version, about = "Crucial and bicrucial permutations for arithmetic monotone patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test one permutation for a property; exit 0 if it holds, 1 if not.
    Check(CheckArgs),
    /// Build a permutation from a named family and verify it.
    Construct(ConstructArgs),
    /// Exhaustive search at one length, or a scan for the shortest length.
    Search(SearchArgs),
    /// Search every length from 1 to --max-n and print a table.
    Classify(ClassifyArgs),
    /// Run the built-in fact suite; exit 1 if a published fact fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PermInput {
    /// Read permutation arguments as JSON arrays, e.g. [2,1,6,4,5,3].
    #[arg(long)]
    pub json_in: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Anti,
    Crucial,
    LeftCrucial,
    Bicrucial,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    /// Permutation in inline notation, e.g. 4(13)1(10)...
    #[arg(long)]
    pub perm: String,
    #[arg(long, value_enum, default_value = "crucial")]
    pub property: Property,
    #[command(flatten)]
    pub input: PermInput,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Family name, e.g. figure1, crucial, make-bicrucial, bicrucial-3l.
    #[arg(value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Base permutation for figure1.
    #[arg(long)]
    pub base: Option<String>,
    /// Input permutation for the doubling and shuffle families.
    #[arg(long)]
    pub from: Option<String>,
    /// Filler (doubling) or second input (shuffles).
    #[arg(long = "with")]
    pub with: Option<String>,
    #[command(flatten)]
    pub input: PermInput,
    #[command(flatten)]
    pub output: Output,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: apcrucial::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Query {
    Exists,
    Count,
    MinimalCrucial,
    MinimalBicrucial,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub query: Query,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    /// Length, for exists and count.
    #[arg(long)]
    pub n: Option<usize>,
    /// Kind, for exists and count.
    #[arg(long, default_value = "crucial", value_parser = parse_kind)]
    pub kind: SearchKind,
    /// First length of a minimal-length scan (default: the theoretical lower bound).
    #[arg(long)]
    pub from: Option<usize>,
    #[command(flatten)]
    pub run: RunOptions,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, default_value = "crucial", value_parser = parse_kind)]
    pub kind: SearchKind,
    /// Count every length instead of stopping at the first witness.
    #[arg(long)]
    pub count: bool,
    #[command(flatten)]
    pub run: RunOptions,
    #[command(flatten)]
    pub output: Output,
}

fn parse_kind(s: &str) -> Result<SearchKind, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "paper")]
    pub suite: Suite,
    #[command(flatten)]
    pub run: RunOptions,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RunOptions {
    /// Stop after this many search nodes (exit 3).
    #[arg(long)]
    pub max_nodes: Option<u64>,
    /// Stop after this many seconds (exit 3).
    #[arg(long)]
    pub max_time: Option<f64>,
    /// Ignore --max-time so the outcome depends only on the inputs.
    #[arg(long)]
    pub deterministic: bool,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Results cache file (default: $APCRUCIAL_CACHE or ./apcrucial-cache.jsonl).
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Do not read or write the cache.
    #[arg(long, conflicts_with = "cache")]
    pub no_cache: bool,
    /// Recompute even when the cache has an answer.
    #[arg(long)]
    pub force: bool,
}

impl RunOptions {
    pub fn config(&self) -> Result<SearchConfig, String> {
        let max_time = match self.max_time {
            Some(s) => Some(Duration::try_from_secs_f64(s).map_err(|e| format!("--max-time {s}: {e}"))?),
            None => None,
        };
        Ok(SearchConfig {
            budget: SearchBudget { max_nodes: self.max_nodes, max_time, deterministic: self.deterministic },
            threads: self.threads,
        })
    }
}
