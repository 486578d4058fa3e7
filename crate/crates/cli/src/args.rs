use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cdwg", version, about = "Minimal absent words and friends from a CDAWG-sized index")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an index from a text file and print its statistics.
    Index(IndexArgs),
    /// Stream a word set from an index file.
    Enumerate(EnumerateArgs),
    /// Build an index and run the invariant suite on it.
    Check(CheckArgs),
    /// Index generated text families and print CSV measurements.
    Bench(BenchArgs),
    /// Export the CDAWG or the extended longest-path tree as DOT.
    Dot(DotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SentinelArg {
    None,
    End,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Auto,
    Forward,
    Reverse,
}

#[derive(Debug, Args)]
pub struct TextInput {
    /// Input text file, or "-" for standard input.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = SentinelArg::Both)]
    pub sentinels: SentinelArg,
    /// Which CDAWG to keep: the text's, its reversal's, or the smaller one.
    #[arg(long, value_enum, default_value_t = OrientationArg::Auto)]
    pub orientation: OrientationArg,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[command(flatten)]
    pub text: TextInput,
    /// Where to write the index file. Without it only statistics are printed.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Keep the text inside the index (readable DOT labels, larger file).
    #[arg(long)]
    pub retain_text: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetArg {
    Maw,
    Ebf,
    Mrw,
    Mus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Plain,
    Tsv,
    Count,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Index file written by `cdwg index`.
    pub index: PathBuf,
    #[arg(long, value_enum, default_value_t = SetArg::Maw)]
    pub set: SetArg,
    /// Occurrence count of the minimal rare words to report (mrw only).
    #[arg(long)]
    pub k: Option<u32>,
    /// Only words of at least this length.
    #[arg(long, conflicts_with = "max_len")]
    pub min_len: Option<usize>,
    /// Only words of at most this length.
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
    pub format: FormatArg,
    /// Stop after this many words.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Show sentinels as ♯ and $ instead of byte escapes.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub text: TextInput,
    /// Treat the input as an index file instead of a text.
    #[arg(long)]
    pub index: bool,
    /// Corrupt one stored Weiner-link symbol before checking.
    #[arg(long)]
    pub inject_fault: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Random,
    Fib,
    Debruijn,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Alphabet size (random, debruijn).
    #[arg(long, default_value_t = 2)]
    pub sigma: usize,
    /// Text lengths (random), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
    pub n: Vec<usize>,
    /// Smallest order (fib, debruijn).
    #[arg(long, default_value_t = 3)]
    pub k_min: usize,
    /// Largest order (fib, debruijn).
    #[arg(long, default_value_t = 12)]
    pub k_max: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SentinelArg::None)]
    pub sentinels: SentinelArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    Cdawg,
    Lpt,
}

#[derive(Debug, Args)]
pub struct DotArgs {
    /// Index file written by `cdwg index`.
    pub index: PathBuf,
    #[arg(long, value_enum, default_value_t = GraphArg::Cdawg)]
    pub graph: GraphArg,
}
