//! Command-line harness for spreader-ranking experiments.

mod commands;
mod config;
mod manifest;

use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use spreadrank::Measure;

#[derive(Parser)]
#[command(
    name = "spreadrank",
    version,
    about = "Centrality measures, SIR ground truth, and ranking-quality metrics for undirected networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print dataset statistics: |V| |E| avg-degree max-degree assortativity
    Stats {
        #[command(flatten)]
        common: CommonArgs,
        /// Manifest to validate the dataset against
        #[arg(long)]
        manifest: Option<std::path::PathBuf>,
    },
    /// Write per-measure score CSVs and a ranking-monotonicity table
    Rank {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Score measures against simulated spreading over an infection-rate sweep
    Evaluate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit the mixing H-index intermediates for a node's 2-hop neighborhood
    Trace {
        #[command(flatten)]
        common: CommonArgs,
        /// Node label to trace
        #[arg(long)]
        node: Option<String>,
    },
}

/// Flags shared by the subcommands; unset values fall back to the config
/// file and then to built-in defaults.
#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Key-value config file (TOML); command-line flags win
    #[arg(long)]
    config: Option<std::path::PathBuf>,

    /// Edge-list file to load
    #[arg(long)]
    dataset: Option<std::path::PathBuf>,

    /// Comma-separated measure list
    #[arg(long, value_delimiter = ',')]
    measures: Option<Vec<Measure>>,

    /// Plotted infection-rate grid as MIN:MAX:STEP
    #[arg(long)]
    beta_grid: Option<String>,

    /// Monte Carlo runs per seed node
    #[arg(long)]
    runs: Option<u32>,

    /// Master seed for the simulation streams
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory
    #[arg(long)]
    out_dir: Option<std::path::PathBuf>,

    /// Weight of strictly-more-diverse neighbors
    #[arg(long)]
    alpha1: Option<f64>,

    /// Weight of equally-diverse neighbors
    #[arg(long)]
    alpha2: Option<f64>,

    /// Decay base of the cumulative weight
    #[arg(long)]
    s: Option<f64>,

    /// Decay softening divisor of the cumulative weight
    #[arg(long)]
    r: Option<f64>,

    /// Degree weight of the ksd edge-weight estimate
    #[arg(long)]
    ksd_alpha: Option<f64>,

    /// Coreness weight of the ksd edge-weight estimate
    #[arg(long)]
    ksd_mu: Option<f64>,

    /// Recovery probability per step
    #[arg(long)]
    gamma: Option<f64>,

    /// Exponent of the weighted-neighborhood edge weight
    #[arg(long)]
    wn_alpha: Option<f64>,
}

/// Error carrying the process exit code: 1 usage, 2 data, 3 runtime.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) | CliError::Runtime(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<spreadrank::Error> for CliError {
    fn from(err: spreadrank::Error) -> Self {
        use spreadrank::Error as E;
        let msg = err.to_string();
        match err {
            E::InvalidParam { .. } | E::BetaOutOfRange { .. } => CliError::Usage(msg),
            E::MalformedLine { .. }
            | E::NoEdges
            | E::Io(_)
            | E::TooFewNodes { .. }
            | E::EmptyEdgeSet { .. }
            | E::DegenerateDegrees(_) => CliError::Data(msg),
            E::IndexOutOfRange { .. } | E::LengthMismatch { .. } | E::NonFiniteScore => {
                CliError::Runtime(msg)
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Data(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };

    let outcome = match cli.command {
        Command::Stats { common, manifest } => commands::stats(&common, manifest.as_deref()),
        Command::Rank { common } => commands::rank(&common),
        Command::Evaluate { common } => commands::evaluate(&common),
        Command::Trace { common, node } => commands::trace(&common, node.as_deref()),
    };

    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.code())
        }
    }
}
