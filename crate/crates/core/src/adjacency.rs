//! Lower, upper and combined adjacency between the k-simplices of a complex.
//!
//! Two k-simplices are *lower* adjacent when they share a (k-1)-face and
//! *upper* adjacent when both are faces of one (k+1)-simplex. The *combined*
//! adjacency used by every centrality is lower-and-not-upper for `k >= 1`,
//! and plain graph adjacency at `k = 0`.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdjacencyKind {
    Lower,
    Upper,
    Combined,
}

/// Symmetric 0/1 adjacency among the simplices of one level, stored as
/// sorted neighbour lists (CSR) with an empty diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAdjacency {
    level: usize,
    kind: AdjacencyKind,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl LevelAdjacency {
    /// Builds from unordered pairs `(i, j)`, `i != j`. Duplicates collapse.
    pub fn from_pairs(
        level: usize,
        kind: AdjacencyKind,
        n: usize,
        pairs: Vec<(usize, usize)>,
    ) -> Self {
        let mut directed: Vec<(usize, usize)> = Vec::with_capacity(pairs.len() * 2);
        for (i, j) in pairs {
            debug_assert!(i != j && i < n && j < n);
            directed.push((i, j));
            directed.push((j, i));
        }
        directed.par_sort_unstable();
        directed.dedup();
        let mut offsets = vec![0; n + 1];
        for &(i, _) in &directed {
            offsets[i + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Self {
            level,
            kind,
            offsets,
            neighbors: directed.into_iter().map(|(_, j)| j).collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn kind(&self) -> AdjacencyKind {
        self.kind
    }

    /// Number of k-simplices (matrix dimension).
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted neighbours of simplex `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).binary_search(&j).is_ok()
    }

    /// Row sum of row `i`. On a combined matrix this is the simplex degree.
    pub fn simplex_degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.simplex_degree(i)).collect()
    }

    /// Number of unordered adjacent pairs.
    pub fn interaction_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Adjacent pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .filter(move |&&j| j > i)
                .map(move |&j| (i, j))
        })
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len())
            .map(|i| self.simplex_degree(i))
            .max()
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, j) in self.pairs() {
            m[(i, j)] = 1.0;
            m[(j, i)] = 1.0;
        }
        m
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.neighbors(i).iter().map(|&j| x[j]).sum();
        }
    }

    /// Graph whose nodes are the k-simplices (labelled by their vertex
    /// tuples) and whose edges are the adjacent pairs.
    pub fn underlying_network(&self, complex: &CliqueComplex) -> Graph {
        let mut g = Graph::new();
        for id in 0..self.len() {
            g.add_node(&complex.format_simplex(self.level, id));
        }
        for (i, j) in self.pairs() {
            g.add_edge(i, j);
        }
        g
    }
}

fn check_level(c: &CliqueComplex, k: usize) -> Result<()> {
    c.level(k).map(|_| ())
}

/// Pairs of k-simplices sharing a (k-1)-face. Empty at `k = 0`.
pub fn lower_adjacency(c: &CliqueComplex, k: usize) -> Result<LevelAdjacency> {
    check_level(c, k)?;
    let n = c.count(k);
    if k == 0 {
        return Ok(LevelAdjacency::from_pairs(
            0,
            AdjacencyKind::Lower,
            n,
            Vec::new(),
        ));
    }
    // Two distinct k-simplices share at most one (k-1)-face, so bucketing by
    // face emits every pair once.
    let pairs: Vec<(usize, usize)> = (0..c.count(k - 1))
        .into_par_iter()
        .flat_map_iter(|face| {
            let bucket = c.cofaces(k, face);
            (0..bucket.len())
                .flat_map(move |a| (a + 1..bucket.len()).map(move |b| (bucket[a], bucket[b])))
        })
        .collect();
    Ok(LevelAdjacency::from_pairs(
        k,
        AdjacencyKind::Lower,
        n,
        pairs,
    ))
}

/// Pairs of k-simplices that are faces of a common (k+1)-simplex. Requires
/// the complex to be materialized up to level `k + 1`; at `k = 0` the graph
/// edges are used directly.
pub fn upper_adjacency(c: &CliqueComplex, k: usize) -> Result<LevelAdjacency> {
    check_level(c, k)?;
    let n = c.count(k);
    if k == 0 {
        return Ok(LevelAdjacency::from_pairs(
            0,
            AdjacencyKind::Upper,
            n,
            c.graph().edges().collect(),
        ));
    }
    if c.max_level() < k + 1 {
        return Err(Error::InsufficientDepth {
            level: k,
            required: k + 1,
            max_level: c.max_level(),
        });
    }
    let pairs: Vec<(usize, usize)> = (0..c.count(k + 1))
        .into_par_iter()
        .flat_map_iter(|id| {
            let faces = c.faces(k + 1, id);
            let mut pairs = Vec::with_capacity(faces.len() * (faces.len() - 1) / 2);
            for a in 0..faces.len() {
                for b in a + 1..faces.len() {
                    pairs.push((faces[a], faces[b]));
                }
            }
            pairs
        })
        .collect();
    Ok(LevelAdjacency::from_pairs(
        k,
        AdjacencyKind::Upper,
        n,
        pairs,
    ))
}

/// Lower adjacent and not upper adjacent (`k >= 1`); graph adjacency at `k = 0`.
pub fn combined_adjacency(c: &CliqueComplex, k: usize) -> Result<LevelAdjacency> {
    if k == 0 {
        let mut a = upper_adjacency(c, 0)?;
        a.kind = AdjacencyKind::Combined;
        return Ok(a);
    }
    let upper = upper_adjacency(c, k)?;
    let lower = lower_adjacency(c, k)?;
    let pairs = lower
        .pairs()
        .filter(|&(i, j)| !upper.contains(i, j))
        .collect();
    Ok(LevelAdjacency::from_pairs(
        k,
        AdjacencyKind::Combined,
        lower.len(),
        pairs,
    ))
}
