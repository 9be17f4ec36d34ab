//! Command-line interface.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::experiment::{run_experiment, Algorithm, ExperimentConfig};
use crate::generate::{generate_graph, Distributions, GraphFamily};
use crate::graph::{Graph, PathIndex};
use crate::io::{read_release_csv, write_release_csv};
use crate::mechanisms::NoiseRng;
use crate::release::{pair_errors, PairValues};

#[derive(Debug, Parser)]
#[command(name = "pathdp", version, about = "Private range queries over shortest paths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random graph as an edge list.
    Gen(GenArgs),
    /// Release private answers for all pairs of a graph.
    Query(QueryArgs),
    /// Compare a release CSV against the exact answers.
    Eval(EvalArgs),
    /// Run an error-scaling experiment and write the report CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: GraphFamily,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Round attributes to multiples of 1/K.
    #[arg(long, value_name = "K")]
    pub attr_grid: Option<u32>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    /// Privacy parameter epsilon; `inf` disables noise.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: f64,
    /// Privacy parameter delta (default 0 for canon and bottleneck-pure,
    /// 0.01 otherwise).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Hub-rate constant overriding the algorithm default.
    #[arg(long)]
    pub hub_mult: Option<f64>,
    /// Compute the release with all noise set to zero.
    #[arg(long)]
    pub no_noise: bool,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Edge-list file (`u v weight attribute` per line).
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Pairs to print, e.g. `0-5,2-3`; the full release is written otherwise.
    #[arg(long, value_delimiter = ',')]
    pub pairs: Vec<String>,
    /// Release CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub release: PathBuf,
    /// Algorithm that produced the release; selects count or bottleneck
    /// answers.
    #[arg(long, value_enum)]
    pub algo: Algorithm,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub algo: Algorithm,
    #[arg(long, value_enum, default_value = "path")]
    pub family: GraphFamily,
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub eps: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub hub_mult: Option<f64>,
    /// Same as `--eps inf`.
    #[arg(long)]
    pub no_noise: bool,
    #[arg(long, value_name = "K")]
    pub attr_grid: Option<u32>,
    /// Report CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn distributions(grid: Option<u32>) -> Distributions {
    Distributions {
        attribute_grid: grid,
        ..Distributions::default()
    }
}

fn parse_pair(text: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || Error::InvalidParameter(format!("bad pair '{text}', expected U-V"));
    let (a, b) = text.split_once('-').ok_or_else(bad)?;
    let u: usize = a.trim().parse().map_err(|_| bad())?;
    let v: usize = b.trim().parse().map_err(|_| bad())?;
    for x in [u, v] {
        if x >= n {
            return Err(Error::InvalidVertex { vertex: x, n });
        }
    }
    Ok((u, v))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(a) => {
            let g = generate_graph(a.family, a.n, a.seed, &distributions(a.attr_grid))?;
            let mut out = output(a.out.as_deref())?;
            g.write_edge_list(&mut out)?;
            out.flush()?;
        }
        Command::Query(a) => {
            let graph = Graph::read_edge_list(&a.graph)?;
            let b = &a.budget;
            let eps = if b.no_noise { f64::INFINITY } else { b.eps };
            let (budget, noise_on) = b.algo.budget(eps, b.delta)?;
            if b.no_noise {
                // the requested budget must still be admissible
                b.algo.budget(b.eps, b.delta)?;
            }
            let index = PathIndex::build(&graph);
            let released = b.algo.release(
                &graph,
                &index,
                budget,
                &NoiseRng::new(b.seed),
                noise_on,
                b.hub_mult,
            )?;
            let mut out = output(a.out.as_deref())?;
            if a.pairs.is_empty() {
                write_release_csv(&released, &mut out)?;
            } else {
                for p in &a.pairs {
                    let (u, v) = parse_pair(p, graph.n())?;
                    writeln!(out, "{u} {v} {}", released.value(u, v))?;
                }
            }
            out.flush()?;
        }
        Command::Eval(a) => {
            let graph = Graph::read_edge_list(&a.graph)?;
            let released = read_release_csv(File::open(&a.release)?)?;
            if released.n() != graph.n() {
                return Err(Error::InvalidParameter(format!(
                    "release covers {} vertices but the graph has {}",
                    released.n(),
                    graph.n()
                )));
            }
            let index = PathIndex::build(&graph);
            let exact = a.algo.exact(&graph, &index);
            let (max, mean) = pair_errors(&released, &exact);
            println!("pairs={} max_err={max} mean_err={mean}", released.len());
        }
        Command::Bench(a) => {
            let mut config = ExperimentConfig::new(a.algo, a.family, a.sizes);
            config.epsilon = if a.no_noise { f64::INFINITY } else { a.eps };
            config.delta = a.delta;
            config.trials = a.trials;
            config.seed = a.seed;
            config.hub_multiplier = a.hub_mult;
            config.distributions = distributions(a.attr_grid);
            config.output = a.out.clone();
            let report = run_experiment(&config)?;
            if a.out.is_none() {
                let mut out = output(None)?;
                report.write_csv(&mut out)?;
                out.flush()?;
            }
            match report.slope {
                Some(s) => eprintln!("slope={s:.4}"),
                None => eprintln!("slope=undefined"),
            }
        }
    }
    Ok(())
}
