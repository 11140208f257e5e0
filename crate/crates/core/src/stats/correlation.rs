use serde::Serialize;

use crate::centrality::{centrality, CentralityOptions, Measure};
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};
use crate::essential::project_to_nodes;

/// Fractional ranks (1-based); tied values share the mean of their ranks.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && x[order[j]] == x[order[i]] {
            j += 1;
        }
        // Positions i..j hold ranks i+1..=j.
        let r = (i + j + 1) as f64 / 2.0;
        for &o in &order[i..j] {
            ranks[o] = r;
        }
        i = j;
    }
    ranks
}

/// Spearman's rho: Pearson correlation of average ranks. `None` when either
/// ranking is constant or there are fewer than two values.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Ok(None);
    }
    let (rx, ry) = (average_ranks(x), average_ranks(y));
    let mean = (x.len() + 1) as f64 / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        let (da, db) = (a - mean, b - mean);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)))
}

/// Mean correlation over the measure pairs between two levels (or within one).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelAverage {
    pub a: usize,
    pub b: usize,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationTable {
    /// Row and column keys, `(level, measure)`.
    pub keys: Vec<(usize, Measure)>,
    pub matrix: Vec<Vec<Option<f64>>>,
    pub averages: Vec<LevelAverage>,
}

impl CorrelationTable {
    pub fn get(&self, a: (usize, Measure), b: (usize, Measure)) -> Option<f64> {
        let i = self.keys.iter().position(|&k| k == a)?;
        let j = self.keys.iter().position(|&k| k == b)?;
        self.matrix[i][j]
    }

    pub fn average(&self, a: usize, b: usize) -> Option<f64> {
        self.averages
            .iter()
            .find(|v| (v.a, v.b) == (a.min(b), a.max(b)))
            .and_then(|v| v.value)
    }
}

/// Spearman correlations between every (level, measure) pair, after
/// projecting higher-level scores onto nodes. Within a level the average is
/// over distinct measure pairs; between levels over all measure pairs.
/// Any undefined entry makes its average undefined.
pub fn correlation_table(
    c: &CliqueComplex,
    measures: &[Measure],
    levels: &[usize],
    opts: &CentralityOptions,
) -> Result<CorrelationTable> {
    let mut keys = Vec::new();
    let mut vectors = Vec::new();
    for &k in levels {
        for &m in measures {
            let v = centrality(c, k, m, opts)?;
            let projected = if k == 0 { v } else { project_to_nodes(c, &v)? };
            keys.push((k, m));
            vectors.push(projected.scores);
        }
    }
    let n = keys.len();
    let mut matrix = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i..n {
            let r = if i == j {
                spearman(&vectors[i], &vectors[i])?.map(|_| 1.0)
            } else {
                spearman(&vectors[i], &vectors[j])?
            };
            matrix[i][j] = r;
            matrix[j][i] = r;
        }
    }

    let mut averages = Vec::new();
    for (ai, &a) in levels.iter().enumerate() {
        for &b in &levels[ai..] {
            let mut vals = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let same = a == b;
                    let wanted =
                        keys[i].0 == a && keys[j].0 == b && if same { i < j } else { true };
                    if wanted {
                        vals.push(matrix[i][j]);
                    }
                }
            }
            let value = if vals.is_empty() {
                None
            } else {
                vals.iter()
                    .copied()
                    .collect::<Option<Vec<f64>>>()
                    .map(|v| v.iter().sum::<f64>() / v.len() as f64)
            };
            averages.push(LevelAverage {
                a: a.min(b),
                b: a.max(b),
                value,
            });
        }
    }
    Ok(CorrelationTable {
        keys,
        matrix,
        averages,
    })
}
