//! Unit disk graphs: nodes are points in the plane, adjacent iff their
//! Euclidean distance is at most the common transmission range (closed disk).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::CoordStream;

pub const DEFAULT_AREA_MIN: f64 = 20.0;
pub const DEFAULT_AREA_MAX: f64 = 500.0;
pub const DEFAULT_RETRY_BUDGET: u32 = 10_000;

/// Parameters for one random connected unit disk graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UdgSpec {
    pub node_count: usize,
    pub transmission_range: f64,
    pub area_min: f64,
    pub area_max: f64,
    pub seed: u64,
    /// Maximum number of full coordinate draws before giving up.
    pub retry_budget: u32,
}

impl UdgSpec {
    pub fn new(node_count: usize, transmission_range: f64, seed: u64) -> Self {
        Self {
            node_count,
            transmission_range,
            area_min: DEFAULT_AREA_MIN,
            area_max: DEFAULT_AREA_MAX,
            seed,
            retry_budget: DEFAULT_RETRY_BUDGET,
        }
    }

    pub fn with_area(mut self, min: f64, max: f64) -> Self {
        self.area_min = min;
        self.area_max = max;
        self
    }

    pub fn with_retry_budget(mut self, budget: u32) -> Self {
        self.retry_budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_count == 0 {
            return Err(Error::InvalidSpec("node_count must be at least 1".into()));
        }
        if !(self.transmission_range.is_finite() && self.transmission_range > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "transmission_range must be positive, got {}",
                self.transmission_range
            )));
        }
        if !(self.area_min.is_finite() && self.area_max.is_finite() && self.area_min < self.area_max) {
            return Err(Error::InvalidSpec(format!(
                "area bounds must satisfy min < max, got [{}, {}]",
                self.area_min, self.area_max
            )));
        }
        if self.retry_budget == 0 {
            return Err(Error::InvalidSpec("retry_budget must be at least 1".into()));
        }
        Ok(())
    }
}

/// Immutable geometric graph. Adjacency is always derived from `coords` and
/// `range`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitDiskGraph {
    coords: Vec<[f64; 2]>,
    range: f64,
    graph: Graph,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    range: f64,
    coords: Vec<[f64; 2]>,
}

impl UnitDiskGraph {
    /// Builds the graph for arbitrary coordinates. Connectivity is not
    /// checked; the generator is the only source of guaranteed-connected
    /// instances.
    pub fn from_coords(coords: Vec<[f64; 2]>, range: f64) -> Self {
        let graph = Graph::from_sorted_adjacency(build_adjacency(&coords, range));
        Self { coords, range, graph }
    }

    pub fn coords(&self) -> &[[f64; 2]] {
        &self.coords
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.coords.len()
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            range: self.range,
            coords: self.coords.clone(),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        let file: GraphFile = serde_json::from_str(text)?;
        Ok(Self::from_coords(file.coords, file.range))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let graph = Self::from_json(&text).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            source,
        })?;
        if !(graph.range.is_finite() && graph.range > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "{}: range must be positive",
                path.display()
            )));
        }
        Ok(graph)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

impl AsRef<Graph> for UnitDiskGraph {
    fn as_ref(&self) -> &Graph {
        &self.graph
    }
}

/// Symmetric neighbor lists under the closed-disk rule, compared on squared
/// distances.
pub fn build_adjacency(coords: &[[f64; 2]], range: f64) -> Vec<Vec<usize>> {
    let n = coords.len();
    let r2 = range * range;
    let mut adj = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            let dx = coords[a][0] - coords[b][0];
            let dy = coords[a][1] - coords[b][1];
            if dx * dx + dy * dy <= r2 {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    // pushes happen in increasing order of the other endpoint, so lists are sorted
    adj
}

/// Rejection-samples coordinates until the unit disk graph is connected.
pub fn generate_udg(spec: &UdgSpec) -> Result<UnitDiskGraph> {
    spec.validate()?;
    let mut stream = CoordStream::new(spec.seed);
    let mut coords = Vec::with_capacity(spec.node_count);
    for _ in 0..spec.retry_budget {
        coords.clear();
        for _ in 0..spec.node_count {
            let x = stream.next_in(spec.area_min, spec.area_max);
            let y = stream.next_in(spec.area_min, spec.area_max);
            coords.push([x, y]);
        }
        let adj = build_adjacency(&coords, spec.transmission_range);
        if crate::graph::is_connected(&adj) {
            return Ok(UnitDiskGraph {
                coords: coords.clone(),
                range: spec.transmission_range,
                graph: Graph::from_sorted_adjacency(adj),
            });
        }
    }
    Err(Error::ConnectivityUnattainable {
        nodes: spec.node_count,
        range: spec.transmission_range,
        draws: spec.retry_budget,
    })
}
