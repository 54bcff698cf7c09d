//! `mis`: selective connectors from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "mis", version, about = "Minimum-inefficiency selective connectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a low-inefficiency subgraph containing the query vertices.
    Connect(ConnectArgs),
    /// Sample a community-aware query set.
    Query(QueryArgs),
    /// Generate a planted-partition graph and its community file.
    Planted(PlantedArgs),
    /// Run a batch experiment described by a config file.
    Bench(BenchArgs),
    /// Build the 3-SAT reduction instance for a DIMACS formula.
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Algo {
    /// Wiener-connector seed, then greedy relaxation.
    GraMis,
    /// Wiener-connector seed, then exhaustive relaxation.
    Exhaustive,
    /// Exact search over every superset of the query.
    Brute,
    /// Cocktail-party seed, then greedy relaxation.
    CtpSeeded,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::GraMis => "gra_mis",
            Algo::Exhaustive => "exhaustive",
            Algo::Brute => "brute",
            Algo::CtpSeeded => "ctp_seeded",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Args)]
pub struct SampleArgs {
    /// Community file (`vertex community` per line).
    #[arg(long)]
    pub communities: Option<PathBuf>,
    /// Query vertices from the home community.
    #[arg(long)]
    pub n: Option<usize>,
    /// Query vertices from other communities.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Number of other communities the `m` vertices span.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct ConnectArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Query file, or a comma-separated list of vertex ids or labels.
    #[arg(long, conflicts_with = "communities")]
    pub query: Option<String>,
    #[command(flatten)]
    pub sample: SampleArgs,
    #[arg(long, value_enum, default_value = "gra_mis")]
    pub algo: Algo,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest number of free vertices the exact algorithms may enumerate.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Include the relaxation trace in JSON output.
    #[arg(long)]
    pub trace: bool,
    /// Record wall-clock runtime in the report.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub sample: SampleArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct PlantedArgs {
    #[arg(long = "blocks")]
    pub blocks: usize,
    #[arg(long)]
    pub size: usize,
    #[arg(long)]
    pub p_in: f64,
    #[arg(long)]
    pub p_out: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output prefix; writes `<out>.edges` and `<out>.communities`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct BenchArgs {
    pub config: PathBuf,
    /// CSV destination (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON destination for the greedy-vs-exhaustive comparison.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args)]
pub struct ReduceArgs {
    pub cnf: PathBuf,
    /// Output prefix; writes `<out>.edges`, `<out>.query` and `<out>.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Block size M in place of 6m² + 1.
    #[arg(long)]
    pub m_override: Option<usize>,
    /// Decide the formula and the instance by enumeration (at most 3 clauses).
    #[arg(long)]
    pub verify: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Connect(a) => commands::connect(a),
        Command::Query(a) => commands::query(a),
        Command::Planted(a) => commands::planted(a),
        Command::Bench(a) => commands::bench(a),
        Command::Reduce(a) => commands::reduce(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
