//! Command-line front end for the `fbpaths` library.
//!
//! Every command prints a JSON summary to stdout. With `--out-dir` (or
//! `FBPATHS_OUT_DIR`) it also writes `<tag>.json` holding the config echo,
//! summary and per-trial rows, and `<tag>.csv` holding the rows.
//!
//! Exit codes: 0 on success, 1 on invalid input or a rejected tree, 2 when an
//! internal invariant check fails.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub mod args;
mod commands;
pub mod report;
pub mod tree_file;

use args::{Algo, GraphArgs, ModelArgs, OutputArgs, QueueArgs, TrialArgs};

#[derive(Debug, Parser)]
#[command(name = "fbpaths", version, about = "Shortest path experiments on random complete graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a complete graph and write it in the text graph format.
    Gen(GenArgs),
    /// Run a single-source shortest path algorithm.
    Sssp(SsspArgs),
    /// Check a shortest path tree against a graph.
    Verify(VerifyArgs),
    /// All-pairs shortest paths with the forward-backward algorithm.
    Apsp(ApspArgs),
    /// Draw exact shortest path tree samples of the exponential complete graph.
    Sample(SampleArgs),
    /// Scaling experiments.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Debug, Subcommand)]
pub enum BenchCommand {
    /// Mean scans and inserts per vertex as n grows.
    ScanScaling(ScanScalingArgs),
    /// Edges examined by the forward-only and forward-backward verifiers.
    VerifyCompare(VerifyCompareArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GenArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Master seed; the graph is the one trial 0 of `sssp --seed` would use.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Graph file to write.
    #[arg(long, short)]
    pub output: PathBuf,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SsspArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Algo::Fb)]
    pub algo: Algo,
    #[command(flatten)]
    pub queue: QueueArgs,
    #[command(flatten)]
    pub trials: TrialArgs,
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    /// Compare with Dijkstra and, for fb, audit queue and request invariants.
    #[arg(long)]
    pub check_invariants: bool,
    /// Write the tree of trial 0.
    #[arg(long)]
    pub tree_out: Option<PathBuf>,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Full,
    Forward,
    Fb,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Seed of a generated graph, as for `gen`.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Tree file: `n source`, then one parent index or `-` per vertex.
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(long, value_enum, default_value_t = VerifyMode::Fb)]
    pub mode: VerifyMode,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ApspArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub queue: QueueArgs,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Start from a raw cost matrix and time the adjacency sort.
    #[arg(long, conflicts_with = "graph")]
    pub raw: bool,
    /// Write the distance matrix in binary form.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Compare every row with Dijkstra.
    #[arg(long)]
    pub check: bool,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[command(flatten)]
    pub trials: TrialArgs,
    /// Also sample the pertinent edge counts (O(n^2) per trial).
    #[arg(long)]
    pub counts: bool,
    /// Report the fraction of trials with at least this many pertinent edges per vertex.
    #[arg(long)]
    pub tail_multiple: Option<f64>,
    /// Count pertinent edges of the undirected model.
    #[arg(long)]
    pub undirected: bool,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanScalingArgs {
    /// Comma-separated graph sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Algo::Fb)]
    pub algo: Algo,
    #[command(flatten)]
    pub queue: QueueArgs,
    #[command(flatten)]
    pub trials: TrialArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyCompareArgs {
    /// Comma-separated graph sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub trials: TrialArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

/// How a command ended, before mapping to an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Rejected,
    Violation,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Rejected => 1,
            Outcome::Violation => 2,
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match commands::run(cli.command) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
