use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use twops::experiment::{rows_to_tsv, run_sweep, summarize, summary_to_text, ExperimentSpec};
use twops::io::{generate_power_law, read_u32_file, write_u32_file};
use twops::metrics::{modularity, replay_assignment, RunReport};
use twops::partitioning::spill_dir;
use twops::{
    capacity, compute_degrees, open_stream, run_partitioner, streaming_clustering, Algorithm,
    AssignmentFileWriter, EdgeStream, GeneratorConfig, NullSink, PartitionerConfig, DEFAULT_ALPHA,
    DEFAULT_LAMBDA,
};

#[derive(Parser)]
#[command(
    name = "twops",
    version,
    about = "Streaming edge partitioning: 2PS, HDRF and DBH"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random power-law graph as a binary edge list
    Generate {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        exponent: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the two clustering passes and dump the vertex → cluster map
    Cluster {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Partition a graph's edges
    Partition {
        #[arg(long, default_value = "2ps")]
        algo: Algorithm,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_LAMBDA)]
        lambda: f64,
        /// Assignment file: one little-endian u32 partition id per edge
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON run report
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Measure an existing assignment
    Metrics {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        /// Vertex → cluster map from `cluster`; adds modularity
        #[arg(long)]
        clusters: Option<PathBuf>,
    },
    /// Generate, partition and measure over a grid of exponents and seeds
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        vertices: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        seeds: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "2ps,hdrf,dbh")]
        algos: Vec<Algorithm>,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_LAMBDA)]
        lambda: f64,
        #[arg(long, default_value_t = 1)]
        repetitions: usize,
        /// Tab-separated table; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Binary edge list (two little-endian u32 ids per edge)
    #[arg(long)]
    graph: PathBuf,
    /// Vertex count; inferred as max id + 1 when omitted
    #[arg(long)]
    vertices: Option<usize>,
}

impl GraphArgs {
    fn open(&self) -> Result<EdgeStream> {
        let stream = open_stream(&self.graph)
            .with_context(|| format!("opening {}", self.graph.display()))?;
        Ok(match self.vertices {
            Some(n) => stream.with_vertex_count(n),
            None => stream,
        })
    }
}

fn write_report(path: &Path, report: &RunReport) -> Result<()> {
    fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate {
            vertices,
            exponent,
            seed,
            out,
        } => {
            let cfg = GeneratorConfig::new(vertices, exponent, seed);
            let stream = generate_power_law(&cfg, &out)?;
            println!("vertices: {vertices}");
            println!("edges: {}", stream.edge_count());
        }
        Command::Cluster { graph, k, out } => {
            let stream = graph.open()?;
            let degrees = compute_degrees(&stream)?;
            let state = streaming_clustering(&stream, &degrees, k)?;
            write_u32_file(&out, state.v2c().iter().copied())?;
            let q = modularity(&stream, state.v2c(), &degrees)?;
            println!("clusters: {}", state.non_empty_clusters());
            if let Some(q) = q {
                println!("modularity: {q:.6}");
            }
        }
        Command::Partition {
            algo,
            graph,
            k,
            alpha,
            lambda,
            out,
            report,
        } => {
            let config = PartitionerConfig::new(k)
                .with_alpha(alpha)
                .with_lambda(lambda);
            config.validate(if algo == Algorithm::TwoPs { 2 } else { 1 })?;
            let stream = graph.open()?;
            let run_report = match &out {
                Some(path) => {
                    let mut writer = AssignmentFileWriter::create(path, stream.edge_count())?;
                    let r = run_partitioner(&stream, algo, &config, &mut writer)?;
                    writer.finish()?;
                    r
                }
                None => run_partitioner(&stream, algo, &config, NullSink::default())?,
            };
            if let Some(path) = &report {
                write_report(path, &run_report)?;
            }
            print!("{}", run_report.to_text());
        }
        Command::Metrics {
            graph,
            assignment,
            k,
            alpha,
            clusters,
        } => {
            if k == 0 {
                bail!("k must be positive");
            }
            let stream = graph.open()?;
            let degrees = compute_degrees(&stream)?;
            let parts = read_u32_file(&assignment)?;
            let (matrix, loads) = replay_assignment(&stream, &parts, degrees.len(), k)?;
            let cap = capacity(alpha, stream.edge_count(), k);
            let mut report = RunReport::from_state("assignment", alpha, cap, &matrix, &loads);
            if let Some(path) = clusters {
                let v2c = read_u32_file(&path)?;
                report.modularity = modularity(&stream, &v2c, &degrees)?;
            }
            print!("{}", report.to_text());
        }
        Command::Sweep {
            exponents,
            vertices,
            k,
            seeds,
            algos,
            alpha,
            lambda,
            repetitions,
            out,
        } => {
            let mut spec = ExperimentSpec::new(exponents, vertices, k, seeds, algos);
            spec.alpha = alpha;
            spec.lambda = lambda;
            spec.repetitions = repetitions;
            let dir = tempfile::tempdir_in(spill_dir())?;
            let rows = run_sweep(&spec, dir.path())?;
            let table = rows_to_tsv(&rows);
            match out {
                Some(path) => {
                    fs::write(&path, &table)?;
                    eprint!("{}", summary_to_text(&summarize(&spec, &rows)));
                }
                None => {
                    print!("{table}");
                    eprint!("{}", summary_to_text(&summarize(&spec, &rows)));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("twops: {e:#}");
            ExitCode::FAILURE
        }
    }
}
