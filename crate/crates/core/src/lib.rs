//! Clique simplicial complexes of undirected networks and centralities of
//! their simplices at every level: nodes, edges, triangles and up.
//!
//! The usual flow is [`graph::Graph`] → [`complex::CliqueComplex`] →
//! [`adjacency::combined_adjacency`] → [`centrality`] / [`paths`], with
//! [`stats`] for degree-distribution fits and rank correlations and
//! [`essential`] for ranking nodes against an essentiality annotation.

pub mod adjacency;
pub mod centrality;
pub mod cli;
pub mod complex;
pub mod error;
pub mod essential;
pub mod export;
pub mod families;
pub mod graph;
pub mod paths;
pub mod stats;

pub use adjacency::{
    combined_adjacency, lower_adjacency, upper_adjacency, AdjacencyKind, LevelAdjacency,
};
pub use centrality::{CentralityOptions, CentralityVector, Measure};
pub use complex::{CliqueComplex, Simplex};
pub use error::{Error, Result};
pub use graph::Graph;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
