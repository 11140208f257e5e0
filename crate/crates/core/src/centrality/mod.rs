//! Simplicial centralities over the combined adjacency of one level.

mod shortest_path;
mod spectral;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::adjacency::{combined_adjacency, LevelAdjacency};
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};

pub use shortest_path::{betweenness, closeness, degree_centrality, harmonic_closeness};
pub use spectral::{
    communicability, eigenvector_centrality, even_odd_walk_sums, katz, katz_alpha_bound,
    principal_eigenvalue, subgraph_centrality, walk_count, SpectralConfig, SpectralDecomposition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Degree,
    Closeness,
    Harmonic,
    Betweenness,
    Katz,
    Eigenvector,
    Subgraph,
}

impl Measure {
    pub const ALL: [Measure; 7] = [
        Measure::Degree,
        Measure::Closeness,
        Measure::Harmonic,
        Measure::Betweenness,
        Measure::Katz,
        Measure::Eigenvector,
        Measure::Subgraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Harmonic => "harmonic",
            Measure::Betweenness => "betweenness",
            Measure::Katz => "katz",
            Measure::Eigenvector => "eigenvector",
            Measure::Subgraph => "subgraph",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown centrality measure {s:?}")))
    }
}

/// Scores of one measure for every simplex of a level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityVector {
    pub level: usize,
    pub measure: Measure,
    /// Damping factor, for Katz.
    pub alpha: Option<f64>,
    pub normalized: bool,
    pub scores: Vec<f64>,
    /// Simplices whose score is undefined and reported as 0 (for example
    /// closeness of a simplex alone in its component).
    pub undefined: Vec<usize>,
}

impl CentralityVector {
    pub(crate) fn new(level: usize, measure: Measure, scores: Vec<f64>) -> Self {
        Self {
            level,
            measure,
            alpha: None,
            normalized: false,
            scores,
            undefined: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityOptions {
    pub normalized: bool,
    /// Katz damping; defaults to half the admissible bound.
    pub alpha: Option<f64>,
    pub spectral: SpectralConfig,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        Self {
            normalized: true,
            alpha: None,
            spectral: SpectralConfig::default(),
        }
    }
}

/// Computes `measure` on the combined adjacency `adj`.
pub fn compute(
    adj: &LevelAdjacency,
    measure: Measure,
    opts: &CentralityOptions,
) -> Result<CentralityVector> {
    match measure {
        Measure::Degree => Ok(degree_centrality(adj)),
        Measure::Closeness => Ok(closeness(adj, opts.normalized)),
        Measure::Harmonic => Ok(harmonic_closeness(adj)),
        Measure::Betweenness => Ok(betweenness(adj, opts.normalized)),
        Measure::Katz => katz(adj, opts.alpha, &opts.spectral),
        Measure::Eigenvector => eigenvector_centrality(adj, &opts.spectral),
        Measure::Subgraph => subgraph_centrality(adj, &opts.spectral),
    }
}

/// Computes `measure` at level `k` of the complex.
pub fn centrality(
    c: &CliqueComplex,
    k: usize,
    measure: Measure,
    opts: &CentralityOptions,
) -> Result<CentralityVector> {
    compute(&combined_adjacency(c, k)?, measure, opts)
}
