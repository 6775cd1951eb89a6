mod commands;
mod input;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use simple_bundles::Stat;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "sbundle",
    version,
    about = "Simple bundles: path bundles, effective widths and bundle networks"
)]
pub struct Cli {
    /// Seed for every stochastic step; recorded in each metadata sidecar.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for all-pairs analyses (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Directory receiving all output files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,

    /// Output formats, comma separated. Each subcommand has its own default.
    #[arg(long, global = true, value_delimiter = ',')]
    pub format: Vec<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Graphml,
    Svg,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build a model network and save it as a JSON graph file.
    Generate {
        #[command(subcommand)]
        model: Model,
        /// File stem; derived from the parameters when omitted.
        #[arg(long)]
        name: Option<String>,
    },
    /// Path counts and mean widths of every bundle from one source, per length.
    Hist(HistArgs),
    /// Full dump of one bundle: levels, links, transitions, flows and widths.
    Bundle(BundleArgs),
    /// Simple bundles network for one length.
    Sbn(SbnArgs),
    /// Mean and standard deviation of SBN weights over a range of lengths.
    Signature(SignatureArgs),
    /// Shapes of all bundles leaving one source.
    Morphology(MorphologyArgs),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Orthogonal lattice.
    Lattice {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        periodic: bool,
    },
    /// Lattice points moved by uniform offsets in [-delta, delta], joined by Delaunay triangulation.
    PerturbedDelaunay {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        delta: f64,
    },
    /// Lattice with each edge rewired with probability p.
    Ws {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        periodic: bool,
    },
}

/// A graph file (JSON or edge list) or a generator spec such as
/// `lattice:7x7`, `lattice:7x7:periodic`, `perturbed-delaunay:15x15:1e-10`,
/// `ws:7x7:0.05` or `ws:7x7:0.05:periodic`.
#[derive(Debug, Args, Serialize)]
pub struct GraphArg {
    pub graph: String,
}

#[derive(Debug, Args, Serialize)]
pub struct HistArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    /// Source node; defaults to the node nearest the coordinate centroid.
    #[arg(long)]
    pub source: Option<String>,
    /// Bundle lengths: `2-7`, `3,5` or `4`.
    #[arg(long, default_value = "2-7", value_parser = input::parse_lengths)]
    pub lengths: Lengths,
}

#[derive(Debug, Args, Serialize)]
pub struct BundleArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long)]
    pub source: String,
    #[arg(long)]
    pub dest: String,
    /// Expected length; a destination at another distance has no such bundle.
    #[arg(long)]
    pub length: Option<usize>,
    /// Also list every path, failing if there are more than --path-cap.
    #[arg(long)]
    pub paths: bool,
    #[arg(long, default_value_t = simple_bundles::DEFAULT_PATH_CAP)]
    pub path_cap: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SbnArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long)]
    pub length: usize,
    /// Per-bundle statistic: mean, min, std or max.
    #[arg(long, default_value = "mean", value_parser = input::parse_stat)]
    #[serde(serialize_with = "input::serialize_stat")]
    pub stat: Stat,
}

#[derive(Debug, Args, Serialize)]
pub struct SignatureArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long, default_value = "2-10", value_parser = input::parse_lengths)]
    pub lengths: Lengths,
    #[arg(long, default_value = "mean", value_parser = input::parse_stat)]
    #[serde(serialize_with = "input::serialize_stat")]
    pub stat: Stat,
}

#[derive(Debug, Args, Serialize)]
pub struct MorphologyArgs {
    #[command(flatten)]
    pub graph: GraphArg,
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long, default_value = "2-7", value_parser = input::parse_lengths)]
    pub lengths: Lengths,
}

#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
pub struct Lengths(pub Vec<usize>);

/// A failed run and the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    /// The inputs were fine but the requested object does not exist.
    Domain(String),
    /// Bad arguments, unreadable or malformed inputs.
    Usage(String),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Domain(_) => ExitCode::from(1),
            Failure::Usage(_) => ExitCode::from(2),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Domain(m) | Failure::Usage(m) => f.write_str(m),
        }
    }
}

impl From<simple_bundles::Error> for Failure {
    fn from(e: simple_bundles::Error) -> Self {
        use simple_bundles::Error;
        match e {
            Error::Overflow | Error::CapacityExceeded { .. } => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(written) => {
            for path in written {
                println!("{}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}
