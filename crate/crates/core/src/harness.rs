//! Seeded parameter sweeps over node count and transmission range.
//!
//! Instance `i` at grid point `(n, r)` always uses seed
//! [`instance_seed`]`(base_seed, n, r, i)`, so the same graph is built no
//! matter which schemes run. A grid point is marked infeasible when its first
//! instance exhausts the retry budget; later instances that fail on their own
//! are dropped and the point reports the count actually used.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backbone::{construct, AlphaMocParams, Scheme};
use crate::error::{Error, Result};
use crate::metrics::{full_report, MetricReport};
use crate::rng::instance_seed;
use crate::udg::{generate_udg, UdgSpec, DEFAULT_AREA_MAX, DEFAULT_AREA_MIN, DEFAULT_RETRY_BUDGET};

/// Metric columns shared by the CSV outputs, in order.
pub const METRICS: [&str; 6] = ["cds_size", "diameter", "abpl", "mrpl", "arpl", "max_stretch"];

pub const INSTANCE_HEADER: [&str; 10] = [
    "graph_id",
    "scheme",
    "n",
    "r",
    "cds_size",
    "diameter",
    "abpl",
    "mrpl",
    "arpl",
    "max_stretch",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub node_counts: Vec<usize>,
    pub ranges: Vec<f64>,
    pub instances_per_point: usize,
    pub base_seed: u64,
    pub schemes: Vec<Scheme>,
    pub alpha: AlphaMocParams,
    pub area_min: f64,
    pub area_max: f64,
    pub retry_budget: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            node_counts: (1..=10).map(|k| k * 10).collect(),
            ranges: vec![10.0, 20.0, 30.0, 40.0],
            instances_per_point: 20,
            base_seed: 1,
            schemes: Scheme::ALL.to_vec(),
            alpha: AlphaMocParams::default(),
            area_min: DEFAULT_AREA_MIN,
            area_max: DEFAULT_AREA_MAX,
            retry_budget: DEFAULT_RETRY_BUDGET,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.node_counts.is_empty() {
            return bad("node_counts is empty".into());
        }
        if self.node_counts[0] == 0 || self.node_counts.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!(
                "node_counts must be positive and strictly increasing, got {:?}",
                self.node_counts
            ));
        }
        if self.ranges.is_empty() {
            return bad("ranges is empty".into());
        }
        if let Some(r) = self.ranges.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return bad(format!("ranges must be positive, got {r}"));
        }
        if self.instances_per_point == 0 {
            return bad("instances_per_point must be at least 1".into());
        }
        if self.schemes.is_empty() {
            return bad("schemes is empty".into());
        }
        let mut seen = self.schemes.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.schemes.len() {
            return bad("schemes lists a scheme twice".into());
        }
        UdgSpec::new(1, 1.0, 0)
            .with_area(self.area_min, self.area_max)
            .with_retry_budget(self.retry_budget)
            .validate()
            .map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    /// Parses a JSON config; errors carry the line and column.
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config = Self::from_json(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn udg_spec(&self, nodes: usize, range: f64, index: usize) -> UdgSpec {
        UdgSpec::new(nodes, range, instance_seed(self.base_seed, nodes, range, index))
            .with_area(self.area_min, self.area_max)
            .with_retry_budget(self.retry_budget)
    }
}

/// One graph x scheme measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRow {
    pub graph_id: String,
    pub scheme: Scheme,
    pub n: usize,
    pub r: f64,
    pub instance: usize,
    pub report: MetricReport,
}

impl InstanceRow {
    pub fn metric(&self, name: &str) -> f64 {
        metric_value(&self.report, name)
    }
}

pub fn metric_value(report: &MetricReport, name: &str) -> f64 {
    match name {
        "cds_size" => report.cds_size as f64,
        "diameter" => f64::from(report.diameter),
        "abpl" => report.abpl,
        "mrpl" => f64::from(report.mrpl),
        "arpl" => report.arpl,
        "max_stretch" => report.max_stretch,
        other => panic!("unknown metric `{other}`"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanStd {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single observation.
    pub std: f64,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Self {
        let k = values.len();
        assert!(k > 0, "no observations");
        let mean = values.iter().sum::<f64>() / k as f64;
        let std = if k < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64).sqrt()
        };
        Self { mean, std }
    }
}

/// Aggregate for one `(n, r, scheme)` grid cell. `stats` is empty when the
/// point is infeasible.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub r: f64,
    pub scheme: Scheme,
    pub instances: usize,
    pub infeasible: bool,
    /// Indexed like [`METRICS`].
    pub stats: Vec<MeanStd>,
}

impl SummaryRow {
    pub fn stat(&self, metric: &str) -> Option<MeanStd> {
        let i = METRICS.iter().position(|m| *m == metric)?;
        self.stats.get(i).copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub instances: Vec<InstanceRow>,
    pub rows: Vec<SummaryRow>,
}

struct PointOutcome {
    instances: Vec<InstanceRow>,
    rows: Vec<SummaryRow>,
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let grid: Vec<(usize, f64)> = config
        .node_counts
        .iter()
        .flat_map(|&n| config.ranges.iter().map(move |&r| (n, r)))
        .collect();
    let outcomes: Vec<PointOutcome> = grid
        .par_iter()
        .map(|&(n, r)| run_point(config, n, r))
        .collect::<Result<_>>()?;
    let mut result = SweepResult {
        config: config.clone(),
        instances: Vec::new(),
        rows: Vec::new(),
    };
    for o in outcomes {
        result.instances.extend(o.instances);
        result.rows.extend(o.rows);
    }
    Ok(result)
}

/// Fixed-range sweep over node counts: CDS size against vertex cardinality.
pub fn run_cardinality_sweep(config: &SweepConfig) -> Result<SweepResult> {
    if config.ranges.len() != 1 {
        return Err(Error::InvalidConfig(format!(
            "cardinality sweep needs exactly one range, got {:?}",
            config.ranges
        )));
    }
    run_sweep(config)
}

fn run_point(config: &SweepConfig, n: usize, r: f64) -> Result<PointOutcome> {
    let first = match generate_udg(&config.udg_spec(n, r, 0)) {
        Ok(g) => g,
        Err(Error::ConnectivityUnattainable { .. }) => {
            let rows = config
                .schemes
                .iter()
                .map(|&scheme| SummaryRow {
                    n,
                    r,
                    scheme,
                    instances: 0,
                    infeasible: true,
                    stats: Vec::new(),
                })
                .collect();
            return Ok(PointOutcome {
                instances: Vec::new(),
                rows,
            });
        }
        Err(e) => return Err(e),
    };
    let rest: Vec<Option<_>> = (1..config.instances_per_point)
        .into_par_iter()
        .map(|i| generate_udg(&config.udg_spec(n, r, i)).ok().map(|g| (i, g)))
        .collect();
    let graphs: Vec<(usize, _)> = std::iter::once((0, first)).chain(rest.into_iter().flatten()).collect();

    let jobs: Vec<(Scheme, usize)> = config
        .schemes
        .iter()
        .flat_map(|&s| (0..graphs.len()).map(move |k| (s, k)))
        .collect();
    let instances: Vec<InstanceRow> = jobs
        .par_iter()
        .map(|&(scheme, k)| {
            let (i, graph) = &graphs[k];
            let backbone = construct(graph.graph(), scheme, config.alpha);
            InstanceRow {
                graph_id: graph_id(n, r, *i),
                scheme,
                n,
                r,
                instance: *i,
                report: full_report(graph.graph(), &backbone),
            }
        })
        .collect();

    let rows = config
        .schemes
        .iter()
        .map(|&scheme| {
            let mine: Vec<&InstanceRow> = instances.iter().filter(|row| row.scheme == scheme).collect();
            let stats = METRICS
                .iter()
                .map(|m| MeanStd::of(&mine.iter().map(|row| row.metric(m)).collect::<Vec<_>>()))
                .collect();
            SummaryRow {
                n,
                r,
                scheme,
                instances: mine.len(),
                infeasible: false,
                stats,
            }
        })
        .collect();
    Ok(PointOutcome { instances, rows })
}

pub fn graph_id(n: usize, r: f64, index: usize) -> String {
    format!("n{n}-r{r}-i{index}")
}

pub fn write_instances_csv(result: &SweepResult, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(INSTANCE_HEADER)?;
    for row in &result.instances {
        let rep = &row.report;
        w.write_record([
            row.graph_id.clone(),
            row.scheme.to_string(),
            row.n.to_string(),
            row.r.to_string(),
            rep.cds_size.to_string(),
            rep.diameter.to_string(),
            rep.abpl.to_string(),
            rep.mrpl.to_string(),
            rep.arpl.to_string(),
            rep.max_stretch.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn summary_header() -> Vec<String> {
    let mut header: Vec<String> = ["n", "r", "scheme", "instances", "infeasible"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for m in METRICS {
        header.push(format!("{m}_mean"));
        header.push(format!("{m}_std"));
    }
    header
}

pub fn write_summary_csv(result: &SweepResult, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(summary_header())?;
    for row in &result.rows {
        let mut record = vec![
            row.n.to_string(),
            row.r.to_string(),
            row.scheme.to_string(),
            row.instances.to_string(),
            row.infeasible.to_string(),
        ];
        if row.infeasible {
            record.extend(std::iter::repeat_n(String::new(), 2 * METRICS.len()));
        } else {
            for s in &row.stats {
                record.push(s.mean.to_string());
                record.push(s.std.to_string());
            }
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `instances.csv` and `summary.csv` into `dir`.
pub fn write_outputs(result: &SweepResult, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let instances = std::fs::File::create(dir.join("instances.csv"))?;
    write_instances_csv(result, std::io::BufWriter::new(instances))?;
    let summary = std::fs::File::create(dir.join("summary.csv"))?;
    write_summary_csv(result, std::io::BufWriter::new(summary))?;
    Ok(())
}

/// Per grid point rank of one scheme on CDS size and MRPL.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffRow {
    pub n: usize,
    pub r: f64,
    pub scheme: Scheme,
    pub cds_size_mean: f64,
    pub mrpl_mean: f64,
    pub size_rank: usize,
    pub mrpl_rank: usize,
    /// `size_rank + mrpl_rank`; lower is a better balance.
    pub balance: usize,
}

/// Competition ranks ("1224"): lower value is better, equal values share the
/// best rank of their group.
pub fn competition_ranks(values: &[f64]) -> Vec<usize> {
    values
        .iter()
        .map(|v| 1 + values.iter().filter(|w| *w < v).count())
        .collect()
}

/// Ranks schemes on mean CDS size and mean MRPL at every feasible grid point.
pub fn summarize_tradeoff(result: &SweepResult) -> Result<Vec<TradeoffRow>> {
    if result.config.schemes.len() < 2 {
        return Err(Error::InvalidConfig("trade-off table needs at least two schemes".into()));
    }
    let mut table = Vec::new();
    for point in result.rows.chunk_by(|a, b| a.n == b.n && a.r == b.r) {
        if point.iter().any(|row| row.infeasible) {
            continue;
        }
        let sizes: Vec<f64> = point.iter().map(|row| row.stat("cds_size").unwrap().mean).collect();
        let mrpls: Vec<f64> = point.iter().map(|row| row.stat("mrpl").unwrap().mean).collect();
        let size_ranks = competition_ranks(&sizes);
        let mrpl_ranks = competition_ranks(&mrpls);
        for (k, row) in point.iter().enumerate() {
            table.push(TradeoffRow {
                n: row.n,
                r: row.r,
                scheme: row.scheme,
                cds_size_mean: sizes[k],
                mrpl_mean: mrpls[k],
                size_rank: size_ranks[k],
                mrpl_rank: mrpl_ranks[k],
                balance: size_ranks[k] + mrpl_ranks[k],
            });
        }
    }
    Ok(table)
}

pub fn write_tradeoff_csv(table: &[TradeoffRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "r", "scheme", "cds_size_mean", "mrpl_mean", "size_rank", "mrpl_rank", "balance"])?;
    for row in table {
        w.write_record([
            row.n.to_string(),
            row.r.to_string(),
            row.scheme.to_string(),
            row.cds_size_mean.to_string(),
            row.mrpl_mean.to_string(),
            row.size_rank.to_string(),
            row.mrpl_rank.to_string(),
            row.balance.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
