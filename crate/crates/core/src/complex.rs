//! Clique complexes: every (k+1)-clique of a graph becomes a k-simplex.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A simplex as a strictly increasing list of node indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts `vertices` and rejects empty or repeated vertex lists.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::InvalidArgument(
                "a simplex needs at least one vertex".into(),
            ));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "repeated vertex in {vertices:?}"
            )));
        }
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The `dim + 1` faces, each obtained by dropping one vertex.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// All k-simplices of one level, stored as consecutive vertex tuples in
/// lexicographic order. The position of a tuple is the simplex ID.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexLevel {
    dim: usize,
    vertices: Vec<usize>,
}

impl SimplexLevel {
    fn from_sorted(dim: usize, mut tuples: Vec<Vec<usize>>) -> Self {
        tuples.sort_unstable();
        tuples.dedup();
        Self {
            dim,
            vertices: tuples.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vertices.len() / (self.dim + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, id: usize) -> &[usize] {
        let w = self.dim + 1;
        &self.vertices[id * w..(id + 1) * w]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, usize> {
        self.vertices.chunks_exact(self.dim + 1)
    }

    /// Binary search for a sorted vertex tuple.
    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        if vertices.len() != self.dim + 1 {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(vertices) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Compressed map from each (k-1)-simplex to the k-simplices having it as a face.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Cofaces {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Cofaces {
    fn of(&self, face: usize) -> &[usize] {
        &self.targets[self.offsets[face]..self.offsets[face + 1]]
    }
}

/// A graph lifted to its clique complex, materialized up to `max_level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueComplex {
    graph: Graph,
    max_level: usize,
    levels: Vec<SimplexLevel>,
    // cofaces[k - 1] maps (k-1)-simplices to k-simplices.
    cofaces: Vec<Cofaces>,
}

impl CliqueComplex {
    /// Enumerates all cliques of up to `max_level + 1` nodes.
    pub fn build(graph: Graph, max_level: usize) -> Self {
        let tuples = enumerate_cliques(&graph, max_level + 1);
        let levels: Vec<SimplexLevel> = tuples
            .into_iter()
            .enumerate()
            .map(|(k, t)| SimplexLevel::from_sorted(k, t))
            .collect();
        let cofaces = (1..levels.len())
            .map(|k| build_cofaces(&levels[k - 1], &levels[k]))
            .collect();
        Self {
            graph,
            max_level,
            levels,
            cofaces,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn level(&self, k: usize) -> Result<&SimplexLevel> {
        self.levels.get(k).ok_or(Error::LevelOutOfRange {
            level: k,
            max_level: self.max_level,
        })
    }

    /// Number of k-simplices; zero above `max_level`.
    pub fn count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, SimplexLevel::len)
    }

    /// Simplex counts for levels `0..=max_level`.
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(SimplexLevel::len).collect()
    }

    /// The vertex tuple of simplex `id` at level `k`.
    pub fn simplex(&self, k: usize, id: usize) -> &[usize] {
        self.levels[k].get(id)
    }

    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        let k = vertices.len().checked_sub(1)?;
        self.levels.get(k)?.find(vertices)
    }

    /// Looks a simplex up by node labels, in any order.
    pub fn find_labels(&self, labels: &[&str]) -> Option<usize> {
        let mut vs = labels
            .iter()
            .map(|l| self.graph.node_index(l))
            .collect::<Option<Vec<_>>>()?;
        vs.sort_unstable();
        self.find(&vs)
    }

    /// IDs of the k-simplices having (k-1)-simplex `face` as a face.
    pub fn cofaces(&self, k: usize, face: usize) -> &[usize] {
        self.cofaces[k - 1].of(face)
    }

    /// IDs of the (k-1)-faces of k-simplex `id`, in vertex-drop order.
    pub fn faces(&self, k: usize, id: usize) -> Vec<usize> {
        assert!(k >= 1, "0-simplices have no faces");
        let s = self.simplex(k, id);
        let mut buf = Vec::with_capacity(k);
        (0..=k)
            .map(|skip| {
                buf.clear();
                buf.extend(
                    s.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v),
                );
                self.levels[k - 1]
                    .find(&buf)
                    .expect("clique complex is closed under faces")
            })
            .collect()
    }

    /// Human-readable form using node labels, e.g. `{1,3,4}`.
    pub fn format_simplex(&self, k: usize, id: usize) -> String {
        let labels: Vec<&str> = self
            .simplex(k, id)
            .iter()
            .map(|&v| self.graph.label(v))
            .collect();
        format!("{{{}}}", labels.join(","))
    }
}

/// Smallest-last (degeneracy) order: position of every node.
fn degeneracy_positions(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut position = vec![0; n];
    let mut cursor: usize = 0;
    for pos in 0..n {
        cursor = cursor.saturating_sub(1);
        let v = loop {
            while buckets[cursor].is_empty() {
                cursor += 1;
            }
            let v = buckets[cursor].pop().unwrap();
            // Stale entries are skipped: a node may sit in several buckets.
            if !removed[v] && degree[v] == cursor {
                break v;
            }
        };
        removed[v] = true;
        position[v] = pos;
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
            }
        }
    }
    position
}

/// Returns, for each size `1..=max_size`, the sorted vertex tuples of all
/// cliques of that size. Each clique is grown from its earliest node in the
/// degeneracy order, so it is emitted exactly once.
fn enumerate_cliques(g: &Graph, max_size: usize) -> Vec<Vec<Vec<usize>>> {
    let n = g.node_count();
    let position = degeneracy_positions(g);
    let forward: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| position[w] > position[v])
                .collect()
        })
        .collect();

    let per_root: Vec<Vec<Vec<Vec<usize>>>> = (0..n)
        .into_par_iter()
        .map(|root| {
            let mut out = vec![Vec::new(); max_size];
            let mut clique = vec![root];
            extend_clique(g, &forward[root], &mut clique, max_size, &mut out);
            out
        })
        .collect();

    let mut levels = vec![Vec::new(); max_size];
    for root_levels in per_root {
        for (k, mut tuples) in root_levels.into_iter().enumerate() {
            levels[k].append(&mut tuples);
        }
    }
    levels
}

fn extend_clique(
    g: &Graph,
    candidates: &[usize],
    clique: &mut Vec<usize>,
    max_size: usize,
    out: &mut [Vec<Vec<usize>>],
) {
    let mut sorted = clique.clone();
    sorted.sort_unstable();
    out[clique.len() - 1].push(sorted);
    if clique.len() == max_size {
        return;
    }
    for (i, &c) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(c, w))
            .collect();
        clique.push(c);
        extend_clique(g, &next, clique, max_size, out);
        clique.pop();
    }
}

fn build_cofaces(lower: &SimplexLevel, upper: &SimplexLevel) -> Cofaces {
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(upper.len() * (upper.dim() + 1));
    let mut buf = Vec::with_capacity(upper.dim());
    for (id, s) in upper.iter().enumerate() {
        for skip in 0..s.len() {
            buf.clear();
            buf.extend(
                s.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            );
            let face = lower
                .find(&buf)
                .expect("clique complex is closed under faces");
            pairs.push((face, id));
        }
    }
    pairs.sort_unstable();
    let mut offsets = vec![0; lower.len() + 1];
    for &(f, _) in &pairs {
        offsets[f + 1] += 1;
    }
    for i in 0..lower.len() {
        offsets[i + 1] += offsets[i];
    }
    Cofaces {
        offsets,
        targets: pairs.into_iter().map(|(_, t)| t).collect(),
    }
}
