mod commands;
mod parse;
mod record;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "eml", version, about = "Induced, minimum maximal and maximum matching numbers of small graphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Search-tree node limit per solver call
    #[arg(long, global = true, env = "EML_BUDGET_NODES")]
    pub budget_nodes: Option<u64>,
    /// Wall-clock limit in seconds per solver call
    #[arg(long, global = true, env = "EML_BUDGET_SECONDS")]
    pub budget_seconds: Option<f64>,
    /// Worker threads for exhaustive scans (default: all cores)
    #[arg(long, global = true, env = "EML_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "EML_FORMAT")]
    pub format: Format,
    /// Directory for cached results of search, census, verify and trees
    #[arg(long, global = true, env = "EML_CACHE")]
    pub cache: Option<PathBuf>,
    /// Witness graphs kept per result
    #[arg(long, global = true, default_value_t = 3, env = "EML_WITNESSES")]
    pub witnesses: usize,
    /// Depth at which the generation tree is split into parallel jobs
    #[arg(long, global = true, default_value_t = 2, env = "EML_SPLIT_DEPTH")]
    pub split_depth: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of graph6 graphs, one per line
    Invariants {
        /// graph6 file; `-` or absent reads standard input
        file: Option<PathBuf>,
        /// Graph given inline instead of a file (repeatable)
        #[arg(long = "graph6", short = 'g')]
        graph6: Vec<String>,
        /// Also report optimal matchings and an independent set
        #[arg(long)]
        optimal: bool,
    },
    /// Build a named graph and check it against its closed forms
    Construct {
        /// Kn, Kmn, Cn, whisker, gr, g1, g2, g3, g4, g5, starjoin, thm34-1, thm34-2, thm34-3
        family: String,
        /// Parameters, positional or as name=value
        params: Vec<String>,
        /// Write the graph6 line to this file
        #[arg(long)]
        g6: Option<PathBuf>,
    },
    /// Join graphs to a new hub vertex and check the join hypotheses
    Compose {
        /// Parts separated by `+`, each FAMILY(ARGS)@VERTEX[:a|:b], e.g. `Kmn(2,2)@0:b + gr(3)@x1`
        spec: String,
        #[arg(long)]
        g6: Option<PathBuf>,
    },
    /// Least order or size of a connected graph with a given triple
    Search {
        objective: ObjectiveArg,
        p: usize,
        q: usize,
        r: usize,
        /// Largest order (minv) or size (mine) to consider
        #[arg(long)]
        budget: Option<u64>,
        /// Start from the trivial size floor instead of the proven one (mine)
        #[arg(long)]
        no_floors: bool,
        /// Write witnesses as graph6 lines to this file
        #[arg(long)]
        g6: Option<PathBuf>,
    },
    /// Triple distribution over all connected graphs of one order
    Census {
        n: usize,
        #[arg(long)]
        g6: Option<PathBuf>,
    },
    /// Check extremal values and bounds by exhaustive search
    Verify {
        /// minv, mine, notpm, lowerbound, mineminv, bounds, conditional, all (default: the first five)
        claims: Vec<String>,
        #[arg(long, default_value_t = 4)]
        r_max: usize,
        #[arg(long, default_value_t = 4)]
        mine_r_max: usize,
        #[arg(long = "nmax", alias = "n-max", default_value_t = 8)]
        n_max: usize,
        /// Largest p for bounds and conditional
        #[arg(long, default_value_t = 4)]
        p_max: usize,
        /// Largest r for bounds
        #[arg(long, default_value_t = 8)]
        bounds_r_max: usize,
        /// Largest r at which bounds are compared with a certified minimum
        #[arg(long, default_value_t = 4)]
        certify_r_max: usize,
    },
    /// Compare induced and minimum maximal matching numbers on all trees
    Trees {
        n_max: usize,
    },
    /// Stream connected graphs (or trees) of one order as graph6
    Generate {
        n: usize,
        #[arg(long)]
        max_edges: Option<usize>,
        #[arg(long)]
        trees: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Minv,
    Mine,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
