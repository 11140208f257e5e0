//! Synthetic complexes that attain the extremal values of the simplicial
//! centralities, and the nine-node reference complex.
//!
//! Each generator returns the clique complex of a graph whose k-level has the
//! required shape, materialized up to level `k + 1` so that combined
//! adjacency at level `k` is available.

use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edges of the nine-node reference network (labels `1..=9`): one tetrahedron
/// `{1,2,3,4}`, triangles `{3,4,5}`, `{4,5,6}`, `{6,7,8}` and the pendant edge
/// `{6,9}`.
pub const REFERENCE_EDGES: [(usize, usize); 14] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
    (3, 5),
    (4, 5),
    (4, 6),
    (5, 6),
    (6, 7),
    (6, 8),
    (7, 8),
    (6, 9),
];

pub fn reference_network() -> Graph {
    Graph::from_edges(9, REFERENCE_EDGES.iter().map(|&(u, v)| (u - 1, v - 1)))
}

/// Which synthetic family to generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `l` k-simplices sharing one (k-1)-face.
    Star { count: usize, level: usize },
    /// A central k-simplex with `arms[i]` k-simplices glued to its i-th face.
    Branched { level: usize, arms: Vec<usize> },
    /// `l` k-simplices chained end to end.
    Path { count: usize, level: usize },
}

impl Family {
    pub fn level(&self) -> usize {
        match self {
            Family::Star { level, .. }
            | Family::Branched { level, .. }
            | Family::Path { level, .. } => *level,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        match self {
            Family::Star { count, level } => star_graph(*count, *level),
            Family::Branched { level, arms } => branched_graph(*level, arms),
            Family::Path { count, level } => path_graph(*count, *level),
        }
    }

    pub fn build(&self) -> Result<CliqueComplex> {
        Ok(CliqueComplex::build(self.graph()?, self.level() + 1))
    }
}

fn check_positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// Nodes `0..k` form the shared (k-1)-simplex; each of the `l` apex nodes is
/// joined to all of them and to nothing else.
fn star_graph(l: usize, k: usize) -> Result<Graph> {
    check_positive("simplex count", l)?;
    check_positive("level", k)?;
    let mut g = Graph::with_numbered_nodes(k + l);
    for u in 0..k {
        for v in u + 1..k {
            g.add_edge(u, v);
        }
    }
    for apex in k..k + l {
        for u in 0..k {
            g.add_edge(u, apex);
        }
    }
    Ok(g)
}

/// Nodes `0..=k` form the central simplex. An arm through face `i` (the face
/// missing node `i`) is a fresh node joined to the k nodes of that face.
fn branched_graph(k: usize, arms: &[usize]) -> Result<Graph> {
    check_positive("level", k)?;
    if arms.len() != k + 1 {
        return Err(Error::InvalidArgument(format!(
            "a branched complex at level {k} needs {} arm counts, got {}",
            k + 1,
            arms.len()
        )));
    }
    let total: usize = arms.iter().sum();
    let mut g = Graph::with_numbered_nodes(k + 1 + total);
    for u in 0..=k {
        for v in u + 1..=k {
            g.add_edge(u, v);
        }
    }
    let mut apex = k + 1;
    for (face, &count) in arms.iter().enumerate() {
        for _ in 0..count {
            for u in (0..=k).filter(|&u| u != face) {
                g.add_edge(u, apex);
            }
            apex += 1;
        }
    }
    Ok(g)
}

/// The k-th power of a path on `l + k` nodes: nodes at index distance at most
/// `k` are joined, so the (k+1)-cliques are exactly the `l` windows of
/// consecutive nodes.
fn path_graph(l: usize, k: usize) -> Result<Graph> {
    check_positive("simplex count", l)?;
    check_positive("level", k)?;
    let n = l + k;
    let mut g = Graph::with_numbered_nodes(n);
    for u in 0..n {
        for v in u + 1..n.min(u + k + 1) {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

/// `l` k-simplices sharing a common (k-1)-face.
pub fn generate_s(l: usize, k: usize) -> Result<CliqueComplex> {
    Family::Star { count: l, level: k }.build()
}

/// Central k-simplex with `x[i]` k-simplices lower adjacent through face `i`.
pub fn generate_t(k: usize, x: &[usize]) -> Result<CliqueComplex> {
    Family::Branched {
        level: k,
        arms: x.to_vec(),
    }
    .build()
}

/// `l` k-simplices forming a chain.
pub fn generate_p(l: usize, k: usize) -> Result<CliqueComplex> {
    Family::Path { count: l, level: k }.build()
}
