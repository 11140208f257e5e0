//! Node rankings from simplex centralities and how many annotated essential
//! nodes they place near the top.

use std::collections::HashSet;
use std::io::BufRead;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::centrality::CentralityVector;
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Top-percentage grid used when none is given.
pub const DEFAULT_GRID: [f64; 7] = [1.0, 3.0, 5.0, 10.0, 15.0, 20.0, 25.0];

pub const DEFAULT_REPETITIONS: usize = 100;

/// Essential flags per graph node. Nodes missing from the annotation file
/// are non-essential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialityAnnotation {
    essential: Vec<bool>,
    /// Nodes that had an entry in the source.
    pub annotated: usize,
    /// Entries whose label is not a graph node.
    pub unknown: usize,
}

impl EssentialityAnnotation {
    pub fn from_flags(essential: Vec<bool>) -> Self {
        let annotated = essential.len();
        Self {
            essential,
            annotated,
            unknown: 0,
        }
    }

    /// Reads `label 0|1` lines; `#` starts a comment.
    pub fn read<R: BufRead>(reader: R, path: &Path, graph: &Graph) -> Result<Self> {
        let mut essential = vec![false; graph.node_count()];
        let mut seen = vec![false; graph.node_count()];
        let mut unknown = 0;
        for (i, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message,
            };
            let tokens: Vec<&str> = body.split_whitespace().collect();
            let [label, flag] = tokens[..] else {
                return Err(parse_err(format!(
                    "expected `label 0|1`, found {} fields",
                    tokens.len()
                )));
            };
            let flag = match flag {
                "0" => false,
                "1" => true,
                other => return Err(parse_err(format!("flag must be 0 or 1, found {other:?}"))),
            };
            match graph.node_index(label) {
                Some(v) => {
                    essential[v] = flag;
                    seen[v] = true;
                }
                None => unknown += 1,
            }
        }
        if unknown > 0 {
            log::warn!(
                "{}: {unknown} labels not in the graph were ignored",
                path.display()
            );
        }
        let annotated = seen.iter().filter(|&&s| s).count();
        if annotated < graph.node_count() {
            log::info!(
                "{}: {} nodes without annotation treated as non-essential",
                path.display(),
                graph.node_count() - annotated
            );
        }
        Ok(Self {
            essential,
            annotated,
            unknown,
        })
    }

    pub fn load(path: &Path, graph: &Graph) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read(std::io::BufReader::new(file), path, graph)
    }

    pub fn len(&self) -> usize {
        self.essential.len()
    }

    pub fn is_empty(&self) -> bool {
        self.essential.is_empty()
    }

    pub fn is_essential(&self, node: usize) -> bool {
        self.essential[node]
    }

    pub fn essential_count(&self) -> usize {
        self.essential.iter().filter(|&&e| e).count()
    }

    /// Fraction of nodes flagged essential.
    pub fn essential_fraction(&self) -> f64 {
        if self.essential.is_empty() {
            0.0
        } else {
            self.essential_count() as f64 / self.essential.len() as f64
        }
    }
}

/// Node score = mean score of the k-simplices containing the node, or 0
/// when it lies in none.
pub fn project_to_nodes(c: &CliqueComplex, v: &CentralityVector) -> Result<CentralityVector> {
    if v.level == 0 {
        return Err(Error::InvalidArgument(
            "projection needs a level of at least 1".into(),
        ));
    }
    let level = c.level(v.level)?;
    if level.len() != v.scores.len() {
        return Err(Error::InvalidArgument(format!(
            "{} scores for {} simplices at level {}",
            v.scores.len(),
            level.len(),
            v.level
        )));
    }
    let n = c.graph().node_count();
    let mut sum = vec![0.0; n];
    let mut count = vec![0usize; n];
    for (simplex, &s) in level.iter().zip(&v.scores) {
        for &u in simplex {
            sum[u] += s;
            count[u] += 1;
        }
    }
    let scores = sum
        .into_iter()
        .zip(count)
        .map(|(s, k)| if k == 0 { 0.0 } else { s / k as f64 })
        .collect();
    Ok(CentralityVector {
        level: 0,
        measure: v.measure,
        alpha: v.alpha,
        normalized: v.normalized,
        scores,
        undefined: Vec::new(),
    })
}

/// Node IDs by descending score; equal scores keep ascending ID order.
pub fn rank_nodes(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionPoint {
    /// Top percentage of the ranking.
    pub x: f64,
    /// Size of the top set.
    pub top: usize,
    /// Essential nodes in the top set (a mean for baselines).
    pub count: f64,
    /// `100 * count / top`.
    pub percentage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionCurve {
    pub tag: String,
    pub points: Vec<DetectionPoint>,
}

/// Size of the top `x` percent of `n` items, rounded up.
pub fn top_size(x: f64, n: usize) -> usize {
    let t = x * n as f64 / 100.0;
    let r = t.round();
    if (t - r).abs() < 1e-9 {
        r as usize
    } else {
        t.ceil() as usize
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    match grid.iter().find(|&&x| !(x > 0.0 && x <= 100.0)) {
        Some(x) => Err(Error::InvalidArgument(format!(
            "grid value {x} outside (0, 100]"
        ))),
        None => Ok(()),
    }
}

fn tops(ranking: &[usize], ann: &EssentialityAnnotation, grid: &[f64]) -> Vec<(usize, usize)> {
    let mut prefix = Vec::with_capacity(ranking.len() + 1);
    prefix.push(0);
    for &v in ranking {
        prefix.push(prefix.last().unwrap() + usize::from(ann.is_essential(v)));
    }
    grid.iter()
        .map(|&x| {
            let top = top_size(x, ranking.len()).min(ranking.len());
            (top, prefix[top])
        })
        .collect()
}

fn percentage(count: f64, top: usize) -> f64 {
    if top == 0 {
        0.0
    } else {
        100.0 * count / top as f64
    }
}

pub fn detection_curve(
    tag: impl Into<String>,
    ranking: &[usize],
    ann: &EssentialityAnnotation,
    grid: &[f64],
) -> Result<DetectionCurve> {
    check_grid(grid)?;
    if ranking.len() != ann.len() {
        return Err(Error::InvalidArgument(format!(
            "ranking of {} nodes, annotation of {}",
            ranking.len(),
            ann.len()
        )));
    }
    if ann.essential_count() == 0 {
        log::warn!("annotation flags no essential nodes; detection curve is zero");
    }
    let points = grid
        .iter()
        .zip(tops(ranking, ann, grid))
        .map(|(&x, (top, count))| DetectionPoint {
            x,
            top,
            count: count as f64,
            percentage: percentage(count as f64, top),
        })
        .collect();
    Ok(DetectionCurve {
        tag: tag.into(),
        points,
    })
}

/// A uniformly random ranking of `n` nodes drawn from `rng`.
pub fn random_ranking(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// Mean detection curve over `repetitions` seeded random rankings.
pub fn random_baseline(
    ann: &EssentialityAnnotation,
    grid: &[f64],
    seed: u64,
    repetitions: usize,
) -> Result<DetectionCurve> {
    check_grid(grid)?;
    if repetitions == 0 {
        return Err(Error::InvalidArgument(
            "at least one repetition is required".into(),
        ));
    }
    let n = ann.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut totals = vec![0usize; grid.len()];
    let mut sizes = vec![0usize; grid.len()];
    for _ in 0..repetitions {
        let ranking = random_ranking(n, &mut rng);
        for (i, (top, count)) in tops(&ranking, ann, grid).into_iter().enumerate() {
            totals[i] += count;
            sizes[i] = top;
        }
    }
    let points = grid
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let count = totals[i] as f64 / repetitions as f64;
            DetectionPoint {
                x,
                top: sizes[i],
                count,
                percentage: percentage(count, sizes[i]),
            }
        })
        .collect();
    Ok(DetectionCurve {
        tag: "random".into(),
        points,
    })
}

/// Number of nodes shared by the first `m` entries of two rankings.
pub fn top_overlap(r1: &[usize], r2: &[usize], m: usize) -> Result<usize> {
    if m > r1.len() || m > r2.len() {
        return Err(Error::InvalidArgument(format!(
            "cutoff {m} exceeds ranking lengths {} and {}",
            r1.len(),
            r2.len()
        )));
    }
    let head: HashSet<usize> = r1[..m].iter().copied().collect();
    Ok(r2[..m].iter().filter(|v| head.contains(v)).count())
}
