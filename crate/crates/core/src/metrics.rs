//! Routing metrics of a backbone.
//!
//! Averages run over unordered distinct pairs, summed in ascending `(a, b)`
//! order so floating-point results do not depend on evaluation order.
//!
//! - `diameter` / `abpl`: max / mean `d_D` over pairs inside `D`
//! - `mrpl` / `arpl`: max / mean `d_D` over all node pairs
//! - `max_stretch`: max `d_D / d` over pairs with `d >= 1`

use serde::Serialize;

use crate::backbone::{backbone_all_pairs, induced_diameter, mask_of, Backbone};
use crate::graph::{all_pairs_hop_dist, Graph, HopDistanceMatrix, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricReport {
    pub cds_size: usize,
    pub diameter: u32,
    pub abpl: f64,
    pub mrpl: u32,
    pub arpl: f64,
    pub max_stretch: f64,
    /// False when `D` has a single node, in which case `abpl` is 0 by
    /// definition.
    #[serde(skip)]
    pub abpl_defined: bool,
}

pub fn cds_size(backbone: &Backbone) -> usize {
    backbone.nodes.len()
}

/// Max `d_D(a, b)` over `a, b` in `D`; 0 for a singleton.
pub fn backbone_diameter(graph: &Graph, nodes: &[usize]) -> u32 {
    induced_diameter(graph, &mask_of(graph.node_count(), nodes)).0
}

/// Mean `d_D(a, b)` over unordered pairs in `D`; 0 for a singleton.
pub fn abpl(graph: &Graph, nodes: &[usize]) -> f64 {
    let mask = mask_of(graph.node_count(), nodes);
    let members: Vec<usize> = {
        let mut m = nodes.to_vec();
        m.sort_unstable();
        m.dedup();
        m
    };
    let mut sum = 0u64;
    let mut pairs = 0u64;
    for (i, &a) in members.iter().enumerate() {
        let row = graph.induced_bfs(a, &mask);
        for &b in &members[i + 1..] {
            sum += u64::from(row[b]);
            pairs += 1;
        }
    }
    if pairs == 0 {
        0.0
    } else {
        sum as f64 / pairs as f64
    }
}

/// Max `d_D(a, b)` over all node pairs.
pub fn mrpl(graph: &Graph, nodes: &[usize]) -> u32 {
    let dd = backbone_all_pairs(graph, &mask_of(graph.node_count(), nodes));
    pairs(graph.node_count()).map(|(a, b)| dd.get(a, b)).max().unwrap_or(0)
}

/// Mean `d_D(a, b)` over all unordered node pairs; 0 when `n < 2`.
pub fn arpl(graph: &Graph, nodes: &[usize]) -> f64 {
    let dd = backbone_all_pairs(graph, &mask_of(graph.node_count(), nodes));
    mean(pairs(graph.node_count()).map(|(a, b)| dd.get(a, b)))
}

/// Max `d_D / d` over pairs with `d >= 1`; 1 when there are no pairs.
pub fn max_stretch(graph: &Graph, nodes: &[usize]) -> f64 {
    let dd = backbone_all_pairs(graph, &mask_of(graph.node_count(), nodes));
    let hops = all_pairs_hop_dist(graph);
    stretch_of(&hops, &dd)
}

pub fn full_report(graph: &Graph, backbone: &Backbone) -> MetricReport {
    let n = graph.node_count();
    let mask = mask_of(n, &backbone.nodes);
    let hops = all_pairs_hop_dist(graph);
    let dd = backbone_all_pairs(graph, &mask);

    let mut diameter = 0;
    let mut d_sum = 0u64;
    let mut d_pairs = 0u64;
    for (i, &a) in backbone.nodes.iter().enumerate() {
        for &b in &backbone.nodes[i + 1..] {
            let x = dd.get(a, b);
            diameter = diameter.max(x);
            d_sum += u64::from(x);
            d_pairs += 1;
        }
    }
    MetricReport {
        cds_size: backbone.nodes.len(),
        diameter,
        abpl: if d_pairs == 0 { 0.0 } else { d_sum as f64 / d_pairs as f64 },
        mrpl: pairs(n).map(|(a, b)| dd.get(a, b)).max().unwrap_or(0),
        arpl: mean(pairs(n).map(|(a, b)| dd.get(a, b))),
        max_stretch: stretch_of(&hops, &dd),
        abpl_defined: d_pairs > 0,
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

fn mean(values: impl Iterator<Item = u32>) -> f64 {
    let (sum, count) = values.fold((0u64, 0u64), |(s, c), v| (s + u64::from(v), c + 1));
    if count == 0 {
        0.0
    } else {
        sum as f64 / count as f64
    }
}

fn stretch_of(hops: &HopDistanceMatrix, dd: &HopDistanceMatrix) -> f64 {
    let mut best = (1u64, 1u64);
    for (a, b) in pairs(hops.node_count()) {
        let d = hops.get(a, b);
        if d == 0 || d == UNREACHABLE {
            continue;
        }
        let x = dd.get(a, b);
        if x == UNREACHABLE {
            return f64::INFINITY;
        }
        let (x, d) = (u64::from(x), u64::from(d));
        if x * best.1 > best.0 * d {
            best = (x, d);
        }
    }
    best.0 as f64 / best.1 as f64
}
