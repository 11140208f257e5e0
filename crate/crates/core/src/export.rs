//! File formats: coordinate-list adjacency matrices, simplex index sidecars
//! and centrality tables.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use crate::adjacency::LevelAdjacency;
use crate::centrality::CentralityVector;
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};

/// Provenance embedded in every output file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
}

impl RunMetadata {
    pub fn new(command: impl Into<String>, config: &impl Serialize, seed: Option<u64>) -> Self {
        Self {
            tool: "simcent",
            version: crate::VERSION,
            command: command.into(),
            seed,
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
        }
    }

    /// `#`-prefixed header lines for text and CSV outputs.
    pub fn write_comment<W: Write + ?Sized>(&self, w: &mut W) -> Result<()> {
        let mut out = || -> std::io::Result<()> {
            writeln!(w, "# {} {} {}", self.tool, self.version, self.command)?;
            if let Some(seed) = self.seed {
                writeln!(w, "# seed: {seed}")?;
            }
            writeln!(w, "# config: {}", self.config)
        };
        out().map_err(|e| Error::io("<output>", e))
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<output>", e)
}

/// One `i j` line (0-based, `i < j`) per adjacent pair.
pub fn write_coo<W: Write + ?Sized>(
    adj: &LevelAdjacency,
    meta: &RunMetadata,
    w: &mut W,
) -> Result<()> {
    meta.write_comment(w)?;
    writeln!(
        w,
        "# level {} {:?} adjacency, {} simplices, {} pairs",
        adj.level(),
        adj.kind(),
        adj.len(),
        adj.interaction_count()
    )
    .map_err(io_err)?;
    for (i, j) in adj.pairs() {
        writeln!(w, "{i} {j}").map_err(io_err)?;
    }
    Ok(())
}

/// Sidecar mapping each simplex ID at level `k` to its node labels.
pub fn write_simplex_index<W: Write + ?Sized>(
    c: &CliqueComplex,
    k: usize,
    meta: &RunMetadata,
    w: &mut W,
) -> Result<()> {
    meta.write_comment(w)?;
    let level = c.level(k)?;
    for (id, simplex) in level.iter().enumerate() {
        write!(w, "{id}").map_err(io_err)?;
        for &v in simplex {
            write!(w, " {}", c.graph().label(v)).map_err(io_err)?;
        }
        writeln!(w).map_err(io_err)?;
    }
    Ok(())
}

fn check_lengths(c: &CliqueComplex, k: usize, vectors: &[CentralityVector]) -> Result<usize> {
    let n = c.count(k);
    if let Some(v) = vectors.iter().find(|v| v.level != k || v.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "{} vector for level {} has {} entries, level {k} has {n}",
            v.measure,
            v.level,
            v.len()
        )));
    }
    Ok(n)
}

/// CSV with one row per simplex: `id,simplex,<measure>...`. Undefined
/// scores are written as `NA`.
pub fn write_centrality_csv<W: Write + ?Sized>(
    c: &CliqueComplex,
    k: usize,
    vectors: &[CentralityVector],
    meta: &RunMetadata,
    w: &mut W,
) -> Result<()> {
    let n = check_lengths(c, k, vectors)?;
    meta.write_comment(w)?;
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["id".to_string(), "simplex".to_string()];
    header.extend(vectors.iter().map(|v| v.measure.to_string()));
    out.write_record(&header).map_err(csv_err)?;
    let undefined: Vec<Vec<bool>> = vectors
        .iter()
        .map(|v| {
            let mut flags = vec![false; n];
            v.undefined.iter().for_each(|&i| flags[i] = true);
            flags
        })
        .collect();
    for id in 0..n {
        let mut row = vec![id.to_string(), c.format_simplex(k, id)];
        for (v, flags) in vectors.iter().zip(&undefined) {
            row.push(if flags[id] {
                "NA".into()
            } else {
                format_float(v.scores[id])
            });
        }
        out.write_record(&row).map_err(csv_err)?;
    }
    out.flush().map_err(io_err)
}

pub fn centrality_json(
    c: &CliqueComplex,
    k: usize,
    vectors: &[CentralityVector],
    meta: &RunMetadata,
) -> Result<serde_json::Value> {
    let n = check_lengths(c, k, vectors)?;
    let simplices: Vec<String> = (0..n).map(|id| c.format_simplex(k, id)).collect();
    Ok(json!({
        "metadata": meta,
        "level": k,
        "simplices": simplices,
        "measures": vectors,
    }))
}

/// Shortest round-trip decimal representation with `.` separator.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        "NA".into()
    }
}

pub fn format_option(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".into(), format_float)
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => io_err(e),
        other => Error::InvalidArgument(format!("csv: {other:?}")),
    }
}
