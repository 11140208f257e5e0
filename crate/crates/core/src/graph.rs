//! Simple undirected graphs with string node labels, and edge-list ingestion.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// An undirected simple graph. Node indices are dense `0..n` and map
/// one-to-one onto the labels they were created with.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Counts of edge-list lines that were dropped during ingestion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub edges_read: usize,
    pub duplicates: usize,
    pub self_loops: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on `n` nodes labelled `"1"..="n"`.
    pub fn with_numbered_nodes(n: usize) -> Self {
        let mut g = Self::new();
        for i in 1..=n {
            g.add_node(&i.to_string());
        }
        g
    }

    /// Builds a graph from index pairs. Self-loops and duplicates are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::with_numbered_nodes(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Returns the index of `label`, inserting a new node if needed.
    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), i);
        self.adjacency.push(Vec::new());
        i
    }

    /// Adds the undirected edge `{u, v}`. Returns `false` for self-loops and
    /// edges already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(
            u < self.labels.len() && v < self.labels.len(),
            "node index out of range"
        );
        if u == v {
            return false;
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                self.edge_count += 1;
                true
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Sorted neighbour list of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Parses a whitespace-separated edge list. Lines starting with `#` and
    /// blank lines are skipped; every other line must hold exactly two labels.
    pub fn read_edge_list<R: Read>(reader: R, source: &Path) -> Result<(Self, IngestReport)> {
        let mut g = Self::new();
        let mut report = IngestReport::default();
        for (lineno, line) in BufReader::new(reader).lines().enumerate() {
            let line = line.map_err(|e| Error::io(source, e))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let (a, b) = match (fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(Error::Parse {
                        path: source.to_path_buf(),
                        line: lineno + 1,
                        message: format!("expected two node labels, found {trimmed:?}"),
                    })
                }
            };
            report.edges_read += 1;
            let u = g.add_node(a);
            let v = g.add_node(b);
            if u == v {
                report.self_loops += 1;
            } else if !g.add_edge(u, v) {
                report.duplicates += 1;
            }
        }
        if report.self_loops + report.duplicates > 0 {
            log::warn!(
                "{}: dropped {} self-loops and {} duplicate edges",
                source.display(),
                report.self_loops,
                report.duplicates
            );
        }
        Ok((g, report))
    }

    pub fn load_edge_list(path: &Path) -> Result<(Self, IngestReport)> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_edge_list(file, path)
    }

    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }
}
