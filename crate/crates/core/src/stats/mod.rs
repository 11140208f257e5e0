//! Degree distributions, maximum-likelihood fits, model selection and rank
//! correlation.

mod correlation;
mod fit;
mod select;

use serde::Serialize;

use crate::adjacency::combined_adjacency;
use crate::complex::CliqueComplex;
use crate::error::{Error, Result};

pub use correlation::{average_ranks, correlation_table, spearman, CorrelationTable, LevelAverage};
pub use fit::{fit_all, fit_mle, Distribution, FitResult, FitStatus, MIN_SAMPLE};
pub use select::{select_model, ModelSelection, Verdict};

/// Empirical distribution of combined degrees at one level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeDistribution {
    pub level: usize,
    /// One degree per simplex, in simplex ID order.
    pub sample: Vec<usize>,
    /// Distinct observed degrees, ascending.
    pub degrees: Vec<usize>,
    pub pdf: Vec<f64>,
    /// Fraction of simplices with degree at least `degrees[i]`.
    pub ccdf: Vec<f64>,
}

impl DegreeDistribution {
    pub fn from_sample(level: usize, sample: Vec<usize>) -> Result<Self> {
        if sample.is_empty() {
            return Err(Error::EmptyLevel(level));
        }
        let mut sorted = sample.clone();
        sorted.sort_unstable();
        let n = sorted.len() as f64;
        let mut degrees = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for d in sorted {
            if degrees.last() == Some(&d) {
                *counts.last_mut().unwrap() += 1;
            } else {
                degrees.push(d);
                counts.push(1);
            }
        }
        let pdf: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
        let mut ccdf = vec![0.0; counts.len()];
        let mut tail = 0;
        for i in (0..counts.len()).rev() {
            tail += counts[i];
            ccdf[i] = tail as f64 / n;
        }
        Ok(Self {
            level,
            sample,
            degrees,
            pdf,
            ccdf,
        })
    }

    /// Probability of degree `d`; zero when unobserved.
    pub fn p(&self, d: usize) -> f64 {
        self.degrees.binary_search(&d).map_or(0.0, |i| self.pdf[i])
    }

    /// The sample as floats, ready for fitting.
    pub fn values(&self) -> Vec<f64> {
        self.sample.iter().map(|&d| d as f64).collect()
    }
}

pub fn degree_distribution(c: &CliqueComplex, k: usize) -> Result<DegreeDistribution> {
    let adj = combined_adjacency(c, k)?;
    DegreeDistribution::from_sample(k, adj.degrees())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_p, generate_s, reference_network};

    #[test]
    fn star_is_a_point_mass() {
        let d = degree_distribution(&generate_s(6, 2).unwrap(), 2).unwrap();
        assert_eq!(d.degrees, vec![5]);
        assert_eq!(d.pdf, vec![1.0]);
    }

    #[test]
    fn path_degrees() {
        let l = 9;
        let d = degree_distribution(&generate_p(l, 2).unwrap(), 2).unwrap();
        assert_eq!(d.p(1), 2.0 / l as f64);
        assert_eq!(d.p(2), (l - 2) as f64 / l as f64);
    }

    #[test]
    fn reference_triangles() {
        let c = CliqueComplex::build(reference_network(), 3);
        let d = degree_distribution(&c, 2).unwrap();
        assert_eq!(d.degrees, vec![0, 1, 3]);
        assert_eq!(d.pdf, vec![3.0 / 7.0, 3.0 / 7.0, 1.0 / 7.0]);
        assert_eq!(d.ccdf[0], 1.0);
        assert!(d.ccdf.windows(2).all(|w| w[0] >= w[1]));
        assert!((d.pdf.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn empty_level_is_an_error() {
        let c = CliqueComplex::build(generate_p(4, 1).unwrap().graph().clone(), 3);
        assert!(matches!(
            degree_distribution(&c, 2),
            Err(Error::EmptyLevel(2))
        ));
    }
}
