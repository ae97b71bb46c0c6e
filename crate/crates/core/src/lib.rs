//! Connected dominating set (virtual backbone) construction on random unit
//! disk graphs, routing-stretch audits, and the sweep harness that compares
//! construction schemes on CDS size and routing path length.

pub mod backbone;
pub mod cli;
pub mod error;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod plot;
pub mod rng;
pub mod udg;

pub use backbone::{AlphaMocParams, Backbone, Scheme};
pub use error::{Error, Result};
pub use graph::{all_pairs_hop_dist, Graph, HopDistanceMatrix};
pub use metrics::{full_report, MetricReport};
pub use udg::{generate_udg, UdgSpec, UnitDiskGraph};
