//! Shortest paths between k-simplices over the combined adjacency.
//!
//! A walk between k-simplices alternates simplices and shared (k-1)-faces and
//! never steps between two faces of a common (k+1)-simplex; its steps are
//! exactly the edges of the combined adjacency, so breadth-first search on
//! that matrix yields the simplicial distance.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::adjacency::{combined_adjacency, LevelAdjacency};
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};

/// Full distance matrices are only materialized up to this many simplices.
pub const DEFAULT_MATRIX_LIMIT: usize = 20_000;

const UNREACHED: u32 = u32::MAX;

/// Unweighted BFS distances from `source`; `UNREACHED` marks other components.
pub(crate) fn bfs(
    adj: &LevelAdjacency,
    source: usize,
    dist: &mut Vec<u32>,
    queue: &mut VecDeque<usize>,
) {
    dist.clear();
    dist.resize(adj.len(), UNREACHED);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in adj.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
}

pub(crate) fn finite(d: u32) -> Option<u32> {
    (d != UNREACHED).then_some(d)
}

/// All-pairs simplicial distances at one level. Unreachable pairs are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    level: usize,
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn compute(adj: &LevelAdjacency, limit: usize) -> Result<Self> {
        let n = adj.len();
        if n > limit {
            return Err(Error::MatrixTooLarge { size: n, limit });
        }
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map_init(
                || (Vec::new(), VecDeque::new()),
                |(dist, queue), s| {
                    bfs(adj, s, dist, queue);
                    dist.clone()
                },
            )
            .collect();
        Ok(Self {
            level: adj.level(),
            n,
            dist: rows.concat(),
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        finite(self.dist[i * self.n + j])
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = Option<u32>> + '_ {
        self.dist[i * self.n..(i + 1) * self.n]
            .iter()
            .map(|&d| finite(d))
    }

    /// Largest finite distance from `i`; 0 for an isolated simplex.
    pub fn eccentricity(&self, i: usize) -> u32 {
        self.row(i).flatten().max().unwrap_or(0)
    }

    /// Largest eccentricity over the level (each taken within its component).
    pub fn diameter(&self) -> u32 {
        (0..self.n).map(|i| self.eccentricity(i)).max().unwrap_or(0)
    }

    /// Average path length of every component, in component order.
    pub fn average_path_lengths(&self) -> Vec<Option<PathLength>> {
        let comps = self.components();
        let mut sums = vec![0u64; comps.count()];
        for i in 0..self.n {
            for j in i + 1..self.n {
                if let Some(d) = self.get(i, j) {
                    sums[comps.label(i)] += u64::from(d);
                }
            }
        }
        sums.into_iter()
            .zip(comps.sizes())
            .map(|(sum, &size)| PathLength::new(sum, size))
            .collect()
    }

    fn components(&self) -> ComponentLabeling {
        let mut labels = vec![usize::MAX; self.n];
        let mut sizes = Vec::new();
        for i in 0..self.n {
            if labels[i] == usize::MAX {
                let id = sizes.len();
                let mut size = 0;
                for (j, d) in self.row(i).enumerate() {
                    if d.is_some() {
                        labels[j] = id;
                        size += 1;
                    }
                }
                sizes.push(size);
            }
        }
        ComponentLabeling {
            level: self.level,
            labels,
            sizes,
        }
    }
}

/// Sum of distances over the unordered pairs of a component, kept as
/// integers so that averages are exact rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathLength {
    pub distance_sum: u64,
    pub pairs: u64,
}

impl PathLength {
    /// `None` for components with fewer than two simplices.
    pub fn new(distance_sum: u64, size: usize) -> Option<Self> {
        (size >= 2).then(|| Self {
            distance_sum,
            pairs: (size as u64) * (size as u64 - 1) / 2,
        })
    }

    pub fn value(&self) -> f64 {
        self.distance_sum as f64 / self.pairs as f64
    }
}

/// Partition of a level into s^k-connected components. Components are
/// numbered in order of their smallest simplex ID.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    level: usize,
    labels: Vec<usize>,
    sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn label(&self, simplex: usize) -> usize {
        self.labels[simplex]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// True when a single component covers the whole (nonempty) level.
    pub fn is_connected(&self) -> bool {
        self.sizes.len() == 1
    }

    pub fn members(&self, component: usize) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&i| self.labels[i] == component)
            .collect()
    }
}

pub fn connected_components(adj: &LevelAdjacency) -> ComponentLabeling {
    let n = adj.len();
    let mut labels = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if labels[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        labels[s] = id;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in adj.neighbors(v) {
                if labels[w] == usize::MAX {
                    labels[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    ComponentLabeling {
        level: adj.level(),
        labels,
        sizes,
    }
}

/// Per-component shortest-path statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub size: usize,
    pub diameter: u32,
    pub path_length: Option<PathLength>,
}

/// Path statistics of one level, computed by streaming one BFS per simplex
/// so that no distance matrix is held in memory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelPathSummary {
    pub level: usize,
    pub simplices: usize,
    pub eccentricity: Vec<u32>,
    pub components: Vec<ComponentSummary>,
}

impl LevelPathSummary {
    pub fn compute(adj: &LevelAdjacency) -> Self {
        let comps = connected_components(adj);
        let per_source: Vec<(u32, u64)> = (0..adj.len())
            .into_par_iter()
            .map_init(
                || (Vec::new(), VecDeque::new()),
                |(dist, queue), s| {
                    bfs(adj, s, dist, queue);
                    let mut ecc = 0;
                    let mut sum = 0u64;
                    for &d in dist.iter().filter(|&&d| d != UNREACHED) {
                        ecc = ecc.max(d);
                        sum += u64::from(d);
                    }
                    (ecc, sum)
                },
            )
            .collect();
        let mut diameters = vec![0u32; comps.count()];
        let mut sums = vec![0u64; comps.count()];
        for (s, &(ecc, sum)) in per_source.iter().enumerate() {
            let c = comps.label(s);
            diameters[c] = diameters[c].max(ecc);
            sums[c] += sum;
        }
        let components = comps
            .sizes()
            .iter()
            .zip(diameters)
            .zip(sums)
            // Each unordered pair was counted from both ends.
            .map(|((&size, diameter), sum)| ComponentSummary {
                size,
                diameter,
                path_length: PathLength::new(sum / 2, size),
            })
            .collect();
        Self {
            level: adj.level(),
            simplices: adj.len(),
            eccentricity: per_source.into_iter().map(|(e, _)| e).collect(),
            components,
        }
    }

    pub fn diameter(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.diameter)
            .max()
            .unwrap_or(0)
    }
}

/// Distance matrix of level `k`, refusing levels above `limit` simplices.
pub fn shortest_distances(c: &CliqueComplex, k: usize, limit: usize) -> Result<DistanceMatrix> {
    DistanceMatrix::compute(&combined_adjacency(c, k)?, limit)
}
