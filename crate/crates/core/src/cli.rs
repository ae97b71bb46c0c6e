//! `cdsbench` command line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 verification
//! failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::backbone::{construct, verify_cds, AlphaMocParams, Backbone, Scheme};
use crate::error::Result;
use crate::graph::all_pairs_hop_dist;
use crate::harness::{run_cardinality_sweep, run_sweep, summarize_tradeoff, write_outputs, write_tradeoff_csv, SweepConfig};
use crate::plot::{plot, PlotSpec};
use crate::udg::{generate_udg, UdgSpec, UnitDiskGraph, DEFAULT_AREA_MAX, DEFAULT_AREA_MIN, DEFAULT_RETRY_BUDGET};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFY_FAILED: u8 = 2;

/// Environment variable capping worker threads (0 or unset = all cores).
pub const THREADS_ENV: &str = "CDSBENCH_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cdsbench", version, about = "Connected dominating set benchmarks on unit disk graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a connected random unit disk graph.
    Gen(GenArgs),
    /// Run a parameter sweep and write instances.csv and summary.csv.
    Run(RunArgs),
    /// Build one backbone for a graph file.
    Build(BuildArgs),
    /// Check a backbone against a graph: domination, connectivity, 5x and 7x stretch.
    Verify(VerifyArgs),
    /// Render a per-range panel plot from summary.csv.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub nodes: usize,
    #[arg(long)]
    pub range: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_AREA_MIN)]
    pub area_min: f64,
    #[arg(long, default_value_t = DEFAULT_AREA_MAX)]
    pub area_max: f64,
    #[arg(long, default_value_t = DEFAULT_RETRY_BUDGET)]
    pub retry_budget: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON file with SweepConfig fields; omitted fields take defaults.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Require a single range (CDS size against vertex cardinality).
    #[arg(long)]
    pub cardinality: bool,
    /// Also write the scheme ranking table to this path.
    #[arg(long)]
    pub tradeoff: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub scheme: Scheme,
    #[arg(long, default_value_t = 5.0)]
    pub alpha: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub backbone: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Metric column prefix: cds_size, mrpl, arpl (or any other summary metric).
    #[arg(long)]
    pub metric: String,
    /// Ranges to draw, one panel each; defaults to all ranges in the input.
    #[arg(long, value_delimiter = ',')]
    pub ranges: Vec<f64>,
    /// Schemes to draw; defaults to all schemes in the input.
    #[arg(long, value_delimiter = ',')]
    pub schemes: Vec<Scheme>,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` and runs the command, writing human-readable output to
/// `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn main() -> ExitCode {
    if let Some(threads) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Run(a) => cmd_run(&a, out),
        Command::Build(a) => cmd_build(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Plot(a) => cmd_plot(&a, out),
    }
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<u8> {
    let spec = UdgSpec::new(a.nodes, a.range, a.seed)
        .with_area(a.area_min, a.area_max)
        .with_retry_budget(a.retry_budget);
    let graph = generate_udg(&spec)?;
    graph.write(&a.out)?;
    writeln!(out, "nodes: {}", graph.node_count())?;
    writeln!(out, "edges: {}", graph.graph().edge_count())?;
    Ok(EXIT_OK)
}

pub fn cmd_run(a: &RunArgs, out: &mut dyn Write) -> Result<u8> {
    let config = SweepConfig::read(&a.config)?;
    let result = if a.cardinality {
        run_cardinality_sweep(&config)?
    } else {
        run_sweep(&config)?
    };
    write_outputs(&result, &a.out)?;
    if let Some(path) = &a.tradeoff {
        let table = summarize_tradeoff(&result)?;
        write_tradeoff_csv(&table, std::io::BufWriter::new(std::fs::File::create(path)?))?;
    }
    let infeasible = result.rows.iter().filter(|r| r.infeasible).count();
    writeln!(
        out,
        "instances: {} rows, summary: {} rows ({} infeasible)",
        result.instances.len(),
        result.rows.len(),
        infeasible
    )?;
    writeln!(out, "config: {}", serde_json::to_string(&result.config).expect("config serializes"))?;
    Ok(EXIT_OK)
}

pub fn cmd_build(a: &BuildArgs, out: &mut dyn Write) -> Result<u8> {
    let graph = UnitDiskGraph::read(&a.graph)?;
    let backbone = construct(graph.graph(), a.scheme, AlphaMocParams::new(a.alpha)?);
    backbone.write(&a.out)?;
    writeln!(out, "{}: {} nodes", backbone.scheme, backbone.len())?;
    Ok(EXIT_OK)
}

/// Outcome of the four backbone checks.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub domination: bool,
    pub connectivity: bool,
    pub max_stretch: f64,
    pub stretch5: bool,
    pub stretch7: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.domination && self.connectivity && self.stretch5 && self.stretch7
    }
}

pub fn verify_backbone(graph: &UnitDiskGraph, backbone: &Backbone) -> Result<VerifyReport> {
    let g = graph.graph();
    let n = g.node_count();
    if let Some(&index) = backbone.nodes.iter().find(|&&v| v >= n) {
        return Err(crate::Error::NodeOutOfRange { index, nodes: n });
    }
    let mask = crate::backbone::mask_of(n, &backbone.nodes);
    let domination = crate::backbone::is_dominating(g, &mask);
    let connectivity = !backbone.nodes.is_empty() && g.induced_components(&mask).1 == 1;
    debug_assert_eq!(domination && connectivity, verify_cds(g, &backbone.nodes));
    let hops = all_pairs_hop_dist(g);
    let dd = crate::backbone::backbone_all_pairs(g, &mask);
    let within = |k: u64| {
        (0..n).all(|a| (a + 1..n).all(|b| u64::from(dd.get(a, b)) <= k * u64::from(hops.get(a, b))))
    };
    Ok(VerifyReport {
        domination,
        connectivity,
        max_stretch: crate::metrics::max_stretch(g, &backbone.nodes),
        stretch5: within(5),
        stretch7: within(7),
    })
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let graph = UnitDiskGraph::read(&a.graph)?;
    let backbone = Backbone::read(&a.backbone)?;
    let report = verify_backbone(&graph, &backbone)?;
    let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
    writeln!(out, "domination: {}", verdict(report.domination))?;
    writeln!(out, "connectivity: {}", verdict(report.connectivity))?;
    writeln!(out, "stretch<=5: {}", verdict(report.stretch5))?;
    writeln!(out, "stretch<=7: {}", verdict(report.stretch7))?;
    writeln!(out, "max stretch: {}", report.max_stretch)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

pub fn cmd_plot(a: &PlotArgs, out: &mut dyn Write) -> Result<u8> {
    let spec = PlotSpec {
        metric: a.metric.clone(),
        panels: a.ranges.clone(),
        series: a.schemes.clone(),
        input: a.input.clone(),
        output: a.out.clone(),
    };
    plot(&spec)?;
    writeln!(out, "wrote {}", a.out.display())?;
    Ok(EXIT_OK)
}
