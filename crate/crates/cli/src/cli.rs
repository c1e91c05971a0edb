use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcadag_core::validate::theorems::{Bounds, TheoremId};
use lcadag_core::Property;

#[derive(Debug, Parser)]
#[command(
    name = "lcadag",
    version,
    about = "Check lca-properties of DAGs, set systems and transit functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for validation; never changes the output.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,

    /// Write the report to this file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct PropArgs {
    /// Parameter k for k-parameterized properties.
    #[arg(long)]
    pub k: Option<usize>,

    /// Comma-separated properties; defaults to every applicable one.
    #[arg(long, value_delimiter = ',', value_parser = parse_property)]
    pub props: Vec<Property>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check properties of a DAG; set-system properties use its clusters.
    CheckDag {
        file: PathBuf,
        #[command(flatten)]
        props: PropArgs,
    },
    /// Check properties of a set system.
    CheckSets {
        file: PathBuf,
        #[command(flatten)]
        props: PropArgs,
    },
    /// Check properties of a transit function.
    CheckTransit {
        file: PathBuf,
        /// Fill missing singleton entries with R({x}) = {x}.
        #[arg(long)]
        implicit_t3: bool,
        /// Comma-separated properties; defaults to every applicable one.
        #[arg(long, value_delimiter = ',', value_parser = parse_property)]
        props: Vec<Property>,
    },
    /// Print the cluster system of a DAG.
    Clusters { file: PathBuf },
    /// Print the closure of a set in a set system.
    Closure {
        file: PathBuf,
        /// Comma-separated elements.
        #[arg(long, value_delimiter = ',', required = true)]
        of: Vec<String>,
    },
    /// Print the canonical k-ary transit function of a set system.
    Canonical {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Print the k-ary transit function R_G of a DAG.
    Rg {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Print the Hasse diagram of a set system, or of the transit sets of a
    /// transit function.
    Hasse {
        file: PathBuf,
        /// Read a transit function instead of a set system.
        #[arg(long)]
        transit: bool,
        #[arg(long)]
        implicit_t3: bool,
        /// Emit Graphviz DOT instead of the DAG format.
        #[arg(long)]
        dot: bool,
    },
    /// Cross-validate theorems over enumerated and sampled instances.
    Validate(ValidateArgs),
    /// Re-verify and list the separating instances.
    Catalog,
    /// Generate a seeded random instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Theorem ids; all of them when omitted.
    #[arg(value_parser = parse_theorem)]
    pub theorems: Vec<TheoremId>,

    /// Enumeration bounds, e.g. `n=4,v=6`.
    #[arg(long, value_parser = parse_bounds)]
    pub bounds: Option<(Option<usize>, Option<usize>)>,

    /// Range of k, e.g. `2..3` or `2`.
    #[arg(long, value_parser = parse_k_range)]
    pub k_range: Option<(usize, usize)>,

    /// Number of sampled DAGs on top of the exhaustive enumeration.
    #[arg(long)]
    pub random: Option<usize>,

    /// Vertices of each sampled DAG.
    #[arg(long)]
    pub random_vertices: Option<usize>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Include the wall time in the report.
    #[arg(long)]
    pub timing: bool,
}

impl ValidateArgs {
    pub fn to_bounds(&self) -> Bounds {
        let mut b = Bounds::default();
        if let Some((n, v)) = self.bounds {
            b.n = n.unwrap_or(b.n);
            b.max_vertices = v.unwrap_or(b.max_vertices);
        }
        b.k_range = self.k_range.unwrap_or(b.k_range);
        b.random_dags = self.random.unwrap_or(b.random_dags);
        b.random_vertices = self.random_vertices.unwrap_or(b.random_vertices);
        b.seed = self.seed.unwrap_or(b.seed);
        b
    }
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// A DAG from a random topological order and independent edges.
    Dag {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
    /// A set system with distinct random members.
    Sets {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        members: usize,
        /// Add all singletons and the ground set.
        #[arg(long)]
        clustering: bool,
    },
}

fn parse_property(s: &str) -> Result<Property, String> {
    s.parse().map_err(|e: lcadag_core::Error| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: lcadag_core::Error| e.to_string())
}

fn parse_bounds(s: &str) -> Result<(Option<usize>, Option<usize>), String> {
    let mut out = (None, None);
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| format!("`{value}` is not a number"))?;
        match key.trim() {
            "n" => out.0 = Some(value),
            "v" => out.1 = Some(value),
            other => return Err(format!("unknown bound `{other}` (expected n or v)")),
        }
    }
    Ok(out)
}

fn parse_k_range(s: &str) -> Result<(usize, usize), String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a number"))
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok((num(lo)?, num(hi.trim_start_matches('='))?)),
        None => num(s).map(|k| (k, k)),
    }
}
