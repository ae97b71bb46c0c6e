//! Connected dominating set (virtual backbone) construction.
//!
//! Every scheme starts from the same greedy substrate, a maximal independent
//! set joined by Steiner connectors, and then enforces its own routing
//! contract:
//!
//! | scheme         | contract on the returned set `D`                               |
//! |----------------|----------------------------------------------------------------|
//! | `GREEDY`       | valid CDS                                                      |
//! | `DIAMETER`     | `diameter(D) <= diameter(G) + 2`                               |
//! | `ALPHA_MOC`    | interior counts `m_D(a,b) <= alpha * m(a,b)`, `m = max(d-1, 0)` |
//! | `COLLAB_COVER` | MIS picked by effective cover, then connected                  |
//! | `GUARANTEED`   | `d_D(a,b) <= 7 d(a,b)` for every pair                          |
//! | `RESILIENT`    | `d_D(a,b) <= 5 d(a,b)`, then cut vertices of `D` bridged        |
//!
//! `d_D(a,b)` is the hop length of the shortest `a -> b` path whose
//! intermediate vertices all lie in `D`; endpoints are unrestricted.
//!
//! All tie-breaks are total: ratio, then degree (descending), then lowest
//! index. Every construction is a pure function of the graph and parameters.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{all_pairs_hop_dist, Graph, HopDistanceMatrix, UNREACHABLE};

/// Largest graph accepted by [`min_cds_oracle`].
pub const ORACLE_MAX_NODES: usize = 12;

pub const DEFAULT_ALPHA: f64 = 5.0;
pub const GUARANTEED_STRETCH: u32 = 7;
pub const RESILIENT_STRETCH: u32 = 5;
/// Slack over the graph diameter allowed by the diameter-bounded scheme.
pub const DIAMETER_SLACK: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Scheme {
    Greedy,
    Diameter,
    AlphaMoc,
    CollabCover,
    Guaranteed,
    Resilient,
}

impl Scheme {
    /// All schemes, in the order used for plot palettes and default configs.
    pub const ALL: [Scheme; 6] = [
        Scheme::Greedy,
        Scheme::Diameter,
        Scheme::AlphaMoc,
        Scheme::CollabCover,
        Scheme::Guaranteed,
        Scheme::Resilient,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Greedy => "GREEDY",
            Scheme::Diameter => "DIAMETER",
            Scheme::AlphaMoc => "ALPHA_MOC",
            Scheme::CollabCover => "COLLAB_COVER",
            Scheme::Guaranteed => "GUARANTEED",
            Scheme::Resilient => "RESILIENT",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

/// Multiplier for the alpha-MOC interior-node bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AlphaMocParams {
    alpha: f64,
}

impl AlphaMocParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha >= 1.0 {
            Ok(Self { alpha })
        } else {
            Err(Error::InvalidConfig(format!("alpha must be a finite value >= 1, got {alpha}")))
        }
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    /// Largest allowed `d_D` for a pair at hop distance `d >= 1`.
    ///
    /// `m_D <= alpha * m` with `m = d - 1`, and `m_D <= alpha - 1` when the
    /// pair is adjacent. Rearranged: `d_D <= floor(alpha * (d - 1)) + 1`
    /// for `d >= 2`, `d_D <= floor(alpha)` for `d = 1`.
    pub fn max_backbone_hops(self, d: u32) -> u32 {
        if d <= 1 {
            return self.alpha.floor() as u32 * d;
        }
        (self.alpha * f64::from(d - 1)).floor() as u32 + 1
    }
}

impl Default for AlphaMocParams {
    fn default() -> Self {
        Self { alpha: DEFAULT_ALPHA }
    }
}

impl TryFrom<f64> for AlphaMocParams {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

impl From<AlphaMocParams> for f64 {
    fn from(p: AlphaMocParams) -> f64 {
        p.alpha
    }
}

/// Effective cover of a candidate: undominated nodes in its closed
/// neighborhood over the size of that neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverRatio {
    pub candidate: usize,
    pub uncovered: usize,
    pub closed_size: usize,
}

impl CoverRatio {
    pub fn value(&self) -> f64 {
        self.uncovered as f64 / self.closed_size as f64
    }

    /// Exact comparison of the two fractions.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self.uncovered * other.closed_size).cmp(&(other.uncovered * self.closed_size))
    }
}

/// A candidate connected dominating set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Backbone {
    pub scheme: Scheme,
    /// Sorted node indices.
    pub nodes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_id: Option<String>,
}

impl Backbone {
    pub fn new(scheme: Scheme, mut nodes: Vec<usize>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        Self {
            scheme,
            nodes,
            graph_id: None,
        }
    }

    pub fn with_graph_id(mut self, id: impl Into<String>) -> Self {
        self.graph_id = Some(id.into());
        self
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            scheme: Scheme,
            nodes: &'a [usize],
        }
        serde_json::to_string(&Out {
            scheme: self.scheme,
            nodes: &self.nodes,
        })
        .expect("backbone serialization cannot fail")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let b: Backbone = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Backbone::new(b.scheme, b.nodes))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

pub(crate) fn mask_of(n: usize, nodes: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &v in nodes {
        mask[v] = true;
    }
    mask
}

pub(crate) fn nodes_of(mask: &[bool]) -> Vec<usize> {
    (0..mask.len()).filter(|&v| mask[v]).collect()
}

/// True iff `nodes` is non-empty, dominates every vertex and induces a
/// connected subgraph. Out-of-range indices make the set invalid.
pub fn verify_cds(graph: &Graph, nodes: &[usize]) -> bool {
    let n = graph.node_count();
    if nodes.is_empty() || nodes.iter().any(|&v| v >= n) {
        return false;
    }
    let mask = mask_of(n, nodes);
    is_dominating(graph, &mask) && graph.induced_components(&mask).1 == 1
}

pub(crate) fn is_dominating(graph: &Graph, mask: &[bool]) -> bool {
    (0..graph.node_count()).all(|v| mask[v] || graph.neighbors(v).iter().any(|&u| mask[u]))
}

/// `d_D(a, b)`: hops on the shortest path whose interior lies in `nodes`.
/// `UNREACHABLE` if no such path exists (only possible for invalid sets).
pub fn backbone_hop_dist(graph: &Graph, nodes: &[usize], a: usize, b: usize) -> u32 {
    let mask = mask_of(graph.node_count(), nodes);
    graph.relay_bfs(a, &mask)[b]
}

/// All-pairs `d_D` for the backbone given as a membership mask.
pub fn backbone_all_pairs(graph: &Graph, mask: &[bool]) -> HopDistanceMatrix {
    let n = graph.node_count();
    let mut dist = Vec::with_capacity(n * n);
    for s in 0..n {
        dist.extend(graph.relay_bfs(s, mask));
    }
    HopDistanceMatrix::from_rows(n, dist)
}

/// Degree descending, index ascending.
pub fn default_ranking(graph: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.node_count()).collect();
    order.sort_by(|&a, &b| graph.degree(b).cmp(&graph.degree(a)).then(a.cmp(&b)));
    order
}

/// Greedy maximal independent set: walk `ranking` and keep every node with no
/// kept neighbor.
///
/// Panics if `ranking` is not a permutation of the node indices.
pub fn build_mis(graph: &Graph, ranking: &[usize]) -> Vec<usize> {
    let n = graph.node_count();
    assert_eq!(ranking.len(), n, "ranking must list every node exactly once");
    let mut seen = vec![false; n];
    let mut blocked = vec![false; n];
    let mut selected = Vec::new();
    for &v in ranking {
        assert!(!seen[v], "ranking lists node {v} twice");
        seen[v] = true;
        if blocked[v] {
            continue;
        }
        selected.push(v);
        blocked[v] = true;
        for &u in graph.neighbors(v) {
            blocked[u] = true;
        }
    }
    selected.sort_unstable();
    selected
}

/// Joins a dominating set into a connected one.
///
/// Repeatedly adds the outside node adjacent to the most distinct components
/// of the induced subgraph (lowest index on ties). When no single node touches
/// two components, the shortest outside path from the component holding the
/// lowest-index member to any other component is added instead.
///
/// Panics if the graph is disconnected.
pub fn connect_mis(graph: &Graph, mis: &[usize]) -> Vec<usize> {
    let n = graph.node_count();
    let mut mask = mask_of(n, mis);
    loop {
        let (label, count) = graph.induced_components(&mask);
        if count <= 1 {
            break;
        }
        let mut best: Option<(usize, usize)> = None; // (touched components, node)
        let mut touched = Vec::new();
        for v in (0..n).filter(|&v| !mask[v]) {
            touched.clear();
            touched.extend(graph.neighbors(v).iter().filter(|&&u| mask[u]).map(|&u| label[u]));
            touched.sort_unstable();
            touched.dedup();
            if best.is_none_or(|(k, _)| touched.len() > k) {
                best = Some((touched.len(), v));
            }
        }
        match best {
            Some((k, v)) if k >= 2 => mask[v] = true,
            _ => {
                for v in outside_bridge_path(graph, &mask, &label) {
                    mask[v] = true;
                }
            }
        }
    }
    nodes_of(&mask)
}

/// Outside nodes on a shortest path from component 0 to another component.
fn outside_bridge_path(graph: &Graph, mask: &[bool], label: &[usize]) -> Vec<usize> {
    let n = graph.node_count();
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if mask[v] && label[v] == 0 {
            visited[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if visited[v] {
                continue;
            }
            if mask[v] {
                // u is outside and touches another component
                if label[v] != 0 && !mask[u] {
                    let mut path = Vec::new();
                    let mut cur = u;
                    while !mask[cur] {
                        path.push(cur);
                        cur = parent[cur];
                    }
                    return path;
                }
                continue;
            }
            visited[v] = true;
            parent[v] = u;
            queue.push_back(v);
        }
    }
    panic!("cannot connect backbone: graph is disconnected");
}

/// Interior vertices of the lexicographically smallest shortest `a -> b`
/// path in the original graph.
pub fn lex_shortest_path_interior(graph: &Graph, hops: &HopDistanceMatrix, a: usize, b: usize) -> Vec<usize> {
    let mut interior = Vec::new();
    let mut cur = a;
    let target = hops.get(a, b);
    assert_ne!(target, UNREACHABLE, "no path between {a} and {b}");
    while cur != b {
        let want = hops.get(cur, b) - 1;
        cur = *graph
            .neighbors(cur)
            .iter()
            .find(|&&v| hops.get(v, b) == want)
            .expect("BFS distances are consistent");
        if cur != b {
            interior.push(cur);
        }
    }
    interior
}

/// Grows `nodes` until `d_D(a,b) <= bound(d(a,b))` holds for every pair.
///
/// Each round picks the violating pair with the largest `d_D / d` (lowest
/// `(a, b)` on ties) and adds the interior of its lexicographically smallest
/// shortest path. `bound(d)` must be at least `d`.
pub fn stretch_repair(graph: &Graph, nodes: &[usize], bound: impl Fn(u32) -> u32) -> Vec<usize> {
    let hops = all_pairs_hop_dist(graph);
    let mut mask = mask_of(graph.node_count(), nodes);
    stretch_repair_mask(graph, &hops, &mut mask, &bound);
    nodes_of(&mask)
}

pub(crate) fn stretch_repair_mask(
    graph: &Graph,
    hops: &HopDistanceMatrix,
    mask: &mut [bool],
    bound: &impl Fn(u32) -> u32,
) {
    let n = graph.node_count();
    while let Some((a, b)) = worst_violation(graph, hops, mask, bound, n) {
        for v in lex_shortest_path_interior(graph, hops, a, b) {
            mask[v] = true;
        }
    }
}

fn worst_violation(
    graph: &Graph,
    hops: &HopDistanceMatrix,
    mask: &[bool],
    bound: &impl Fn(u32) -> u32,
    n: usize,
) -> Option<(usize, usize)> {
    // (d_D, d, a, b) of the current worst pair
    let mut worst: Option<(u64, u64, usize, usize)> = None;
    for a in 0..n {
        let row = graph.relay_bfs(a, mask);
        for b in a + 1..n {
            let d = hops.get(a, b);
            if d == UNREACHABLE || d == 0 {
                continue;
            }
            let limit = bound(d);
            assert!(limit >= d, "stretch bound {limit} is below the hop distance {d}");
            let dd = row[b];
            if dd <= limit {
                continue;
            }
            let (dd, d) = (u64::from(dd), u64::from(d));
            let better = match worst {
                None => true,
                Some((wdd, wd, _, _)) => dd * wd > wdd * d,
            };
            if better {
                worst = Some((dd, d, a, b));
            }
        }
    }
    worst.map(|(_, _, a, b)| (a, b))
}

/// Largest induced-subgraph hop distance between two members; 0 for a
/// single member.
pub(crate) fn induced_diameter(graph: &Graph, mask: &[bool]) -> (u32, Option<(usize, usize)>) {
    let mut best = (0, None);
    for a in (0..graph.node_count()).filter(|&v| mask[v]) {
        let row = graph.induced_bfs(a, mask);
        for b in a + 1..graph.node_count() {
            if mask[b] && row[b] > best.0 {
                best = (row[b], Some((a, b)));
            }
        }
    }
    best
}

pub fn cds_greedy(graph: &Graph) -> Backbone {
    let mis = build_mis(graph, &default_ranking(graph));
    Backbone::new(Scheme::Greedy, connect_mis(graph, &mis))
}

/// Greedy CDS, then shortest paths between diametral backbone pairs are
/// added until `diameter(D) <= diameter(G) + 2`.
pub fn cds_diameter(graph: &Graph) -> Backbone {
    let hops = all_pairs_hop_dist(graph);
    let limit = hops.diameter() + DIAMETER_SLACK;
    let mut mask = mask_of(graph.node_count(), &cds_greedy(graph).nodes);
    loop {
        match induced_diameter(graph, &mask) {
            (diam, Some((a, b))) if diam > limit => {
                for v in lex_shortest_path_interior(graph, &hops, a, b) {
                    mask[v] = true;
                }
            }
            _ => break,
        }
    }
    Backbone::new(Scheme::Diameter, nodes_of(&mask))
}

pub fn cds_alpha_moc(graph: &Graph, params: AlphaMocParams) -> Backbone {
    let greedy = cds_greedy(graph);
    let nodes = stretch_repair(graph, &greedy.nodes, |d| params.max_backbone_hops(d));
    Backbone::new(Scheme::AlphaMoc, nodes)
}

/// Selection order of the cover-driven independent set, with each pick's
/// ratio at the moment it was chosen.
pub fn collab_cover_order(graph: &Graph) -> Vec<CoverRatio> {
    let n = graph.node_count();
    let mut dominated = vec![false; n];
    let mut order = Vec::new();
    loop {
        let mut best: Option<CoverRatio> = None;
        for v in (0..n).filter(|&v| !dominated[v]) {
            let uncovered = 1 + graph.neighbors(v).iter().filter(|&&u| !dominated[u]).count();
            let ratio = CoverRatio {
                candidate: v,
                uncovered,
                closed_size: graph.degree(v) + 1,
            };
            let wins = match &best {
                None => true,
                Some(cur) => ratio
                    .cmp_value(cur)
                    .then(graph.degree(v).cmp(&graph.degree(cur.candidate)))
                    == Ordering::Greater,
            };
            if wins {
                best = Some(ratio);
            }
        }
        let Some(pick) = best else { break };
        dominated[pick.candidate] = true;
        for &u in graph.neighbors(pick.candidate) {
            dominated[u] = true;
        }
        order.push(pick);
    }
    order
}

pub fn cds_collab_cover(graph: &Graph) -> Backbone {
    let mis: Vec<usize> = collab_cover_order(graph).iter().map(|c| c.candidate).collect();
    Backbone::new(Scheme::CollabCover, connect_mis(graph, &mis))
}

pub fn cds_guaranteed(graph: &Graph) -> Backbone {
    let greedy = cds_greedy(graph);
    let nodes = stretch_repair(graph, &greedy.nodes, |d| GUARANTEED_STRETCH * d);
    Backbone::new(Scheme::Guaranteed, nodes)
}

/// Greedy CDS repaired to stretch 5, then [`resilience_augment`].
pub fn cds_resilient(graph: &Graph) -> Backbone {
    let greedy = cds_greedy(graph);
    let repaired = stretch_repair(graph, &greedy.nodes, |d| RESILIENT_STRETCH * d);
    Backbone::new(Scheme::Resilient, resilience_augment(graph, &repaired))
}

/// For each cut vertex `v` of the induced backbone (ascending, rechecked
/// against the current set), adds the lowest-index outside node adjacent to
/// at least two components of `D - v`. Adding such a node never creates a
/// new cut vertex.
pub fn resilience_augment(graph: &Graph, nodes: &[usize]) -> Vec<usize> {
    let n = graph.node_count();
    let mut mask = mask_of(n, nodes);
    for v in graph.induced_articulation_points(&mask) {
        mask[v] = false;
        let (label, count) = graph.induced_components(&mask);
        mask[v] = true;
        if count < 2 {
            continue;
        }
        let bridge = (0..n).filter(|&w| !mask[w]).find(|&w| {
            let mut first = None;
            graph.neighbors(w).iter().any(|&u| {
                if u == v || !mask[u] {
                    return false;
                }
                match first {
                    None => {
                        first = Some(label[u]);
                        false
                    }
                    Some(l) => l != label[u],
                }
            })
        });
        if let Some(w) = bridge {
            mask[w] = true;
        }
    }
    nodes_of(&mask)
}

/// Runs one scheme.
pub fn construct(graph: &Graph, scheme: Scheme, alpha: AlphaMocParams) -> Backbone {
    match scheme {
        Scheme::Greedy => cds_greedy(graph),
        Scheme::Diameter => cds_diameter(graph),
        Scheme::AlphaMoc => cds_alpha_moc(graph, alpha),
        Scheme::CollabCover => cds_collab_cover(graph),
        Scheme::Guaranteed => cds_guaranteed(graph),
        Scheme::Resilient => cds_resilient(graph),
    }
}

/// Minimum connected dominating set by exhaustive search, smallest size
/// first, lexicographically smallest set within a size.
pub fn min_cds_oracle(graph: &Graph) -> Result<Vec<usize>> {
    let n = graph.node_count();
    if n > ORACLE_MAX_NODES {
        return Err(Error::InstanceTooLarge {
            nodes: n,
            cap: ORACLE_MAX_NODES,
        });
    }
    for size in 1..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if verify_cds(graph, &combo) {
                return Ok(combo);
            }
            // next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    Err(Error::InvalidSpec("graph has no connected dominating set (disconnected)".into()))
}
