use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph spec: {0}")]
    InvalidSpec(String),

    #[error("connectivity unattainable: no connected draw for n={nodes}, r={range} after {draws} attempts")]
    ConnectivityUnattainable { nodes: usize, range: f64, draws: u32 },

    #[error("instance too large for exhaustive search: n={nodes} exceeds cap {cap}")]
    InstanceTooLarge { nodes: usize, cap: usize },

    #[error("invalid sweep config: {0}")]
    InvalidConfig(String),

    #[error("unknown scheme identifier `{0}`")]
    UnknownScheme(String),

    #[error("node index {index} out of range for graph with {nodes} nodes")]
    NodeOutOfRange { index: usize, nodes: usize },

    #[error("missing columns in {path}: {}", columns.join(", "))]
    MissingColumns { path: PathBuf, columns: Vec<String> },

    #[error("nothing to plot: {0}")]
    EmptyPlot(String),

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
