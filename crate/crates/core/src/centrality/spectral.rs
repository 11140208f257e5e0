//! Walk-based centralities: Katz, eigenvector, subgraph centrality and
//! communicability.
//!
//! Levels up to `dense_limit` simplices use a full symmetric
//! eigendecomposition. Larger levels fall back to power iteration (principal
//! eigenpair), conjugate gradients (Katz), and per-simplex truncated
//! exponential series (subgraph centrality, communicability) when enabled.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use super::{CentralityVector, Measure};
use crate::adjacency::LevelAdjacency;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralConfig {
    /// Largest level handled by dense eigendecomposition.
    pub dense_limit: usize,
    /// Allow truncated-series exponentials above `dense_limit`.
    pub series_fallback: bool,
    /// Convergence tolerance of the iterative methods.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self {
            dense_limit: 5_000,
            series_fallback: false,
            tolerance: 1e-12,
            max_iterations: 100_000,
        }
    }
}

// Below this the matrix is treated as having no edges.
const ZERO_EIGENVALUE: f64 = 1e-10;
// Bound on the neglected tail of the exponential series.
const SERIES_REMAINDER: f64 = 1e-8;

/// Eigenvalues in descending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub level: usize,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl SpectralDecomposition {
    pub fn compute(adj: &LevelAdjacency, dense_limit: usize) -> Result<Self> {
        let n = adj.len();
        if n > dense_limit {
            return Err(Error::DenseLimitExceeded {
                size: n,
                limit: dense_limit,
            });
        }
        if n == 0 {
            return Ok(Self {
                level: adj.level(),
                eigenvalues: Vec::new(),
                eigenvectors: DMatrix::zeros(0, 0),
            });
        }
        let eig = SymmetricEigen::new(adj.to_dense());
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let eigenvalues = order.iter().map(|&j| eig.eigenvalues[j]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |i, c| eig.eigenvectors[(i, order[c])]);
        Ok(Self {
            level: adj.level(),
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// `f(A) = sum_j f(lambda_j) psi_j psi_j^T`.
    pub fn matrix_function(&self, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let weights = DVector::from_iterator(self.len(), self.eigenvalues.iter().map(|&l| f(l)));
        let scaled = DMatrix::from_fn(self.len(), self.len(), |i, j| {
            self.eigenvectors[(i, j)] * weights[j]
        });
        scaled * self.eigenvectors.transpose()
    }

    /// Diagonal of `f(A)`.
    pub fn diagonal(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        (0..self.len())
            .map(|i| {
                self.eigenvectors
                    .row(i)
                    .iter()
                    .zip(&weights)
                    .map(|(&p, &w)| w * p * p)
                    .sum()
            })
            .collect()
    }

    /// Entry `(i, j)` of `f(A)`.
    pub fn entry(&self, i: usize, j: usize, f: impl Fn(f64) -> f64) -> f64 {
        (0..self.len())
            .map(|c| f(self.eigenvalues[c]) * self.eigenvectors[(i, c)] * self.eigenvectors[(j, c)])
            .sum()
    }
}

/// Number of walks of length `m` between every pair of simplices, `A^m`.
pub fn walk_count(adj: &LevelAdjacency, m: usize) -> Result<DMatrix<u64>> {
    let n = adj.len();
    let mut current = DMatrix::<u64>::identity(n, n);
    for step in 1..=m {
        let mut next = DMatrix::<u64>::zeros(n, n);
        for i in 0..n {
            for &k in adj.neighbors(i) {
                for j in 0..n {
                    next[(i, j)] = next[(i, j)]
                        .checked_add(current[(k, j)])
                        .ok_or(Error::Overflow(step))?;
                }
            }
        }
        current = next;
    }
    Ok(current)
}

/// Power iteration on `A + I`; the shift separates `lambda_1` from
/// `-lambda_1` on bipartite levels. Returns `(lambda_1, psi_1)`.
fn power_iteration(adj: &LevelAdjacency, cfg: &SpectralConfig) -> Result<(f64, Vec<f64>)> {
    let n = adj.len();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut ax = vec![0.0; n];
    for _ in 0..cfg.max_iterations {
        adj.mul_vec(&x, &mut ax);
        let mut y: Vec<f64> = ax.iter().zip(&x).map(|(a, b)| a + b).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        y.iter_mut().for_each(|v| *v /= norm);
        let change = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = y;
        if change < cfg.tolerance {
            adj.mul_vec(&x, &mut ax);
            let lambda = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
            return Ok((lambda, x));
        }
    }
    Err(Error::NonConvergence(format!(
        "power iteration at level {} after {} iterations",
        adj.level(),
        cfg.max_iterations
    )))
}

/// Largest eigenvalue of the adjacency matrix.
pub fn principal_eigenvalue(adj: &LevelAdjacency, cfg: &SpectralConfig) -> Result<f64> {
    if adj.interaction_count() == 0 {
        return Ok(0.0);
    }
    if adj.len() <= cfg.dense_limit {
        Ok(SpectralDecomposition::compute(adj, cfg.dense_limit)?.largest())
    } else {
        power_iteration(adj, cfg).map(|(l, _)| l)
    }
}

/// Supremum of admissible Katz damping, `1 / lambda_1` (infinite when the
/// level has no adjacencies).
pub fn katz_alpha_bound(adj: &LevelAdjacency, cfg: &SpectralConfig) -> Result<f64> {
    let lambda = principal_eigenvalue(adj, cfg)?;
    Ok(if lambda < ZERO_EIGENVALUE {
        f64::INFINITY
    } else {
        1.0 / lambda
    })
}

/// Katz centrality `(I - alpha A)^{-1} e`. Without `alpha`, half the
/// admissible bound is used (0.5 when the bound is infinite).
pub fn katz(
    adj: &LevelAdjacency,
    alpha: Option<f64>,
    cfg: &SpectralConfig,
) -> Result<CentralityVector> {
    let upper = katz_alpha_bound(adj, cfg)?;
    let alpha = alpha.unwrap_or(if upper.is_finite() { 0.5 * upper } else { 0.5 });
    if !(alpha > 0.0 && alpha < upper) {
        return Err(Error::InadmissibleAlpha { alpha, upper });
    }
    let n = adj.len();
    let scores = if n == 0 {
        Vec::new()
    } else if n <= cfg.dense_limit {
        let system = DMatrix::identity(n, n) - adj.to_dense() * alpha;
        let rhs = DVector::from_element(n, 1.0);
        system
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::NonConvergence("singular Katz system".into()))?
            .iter()
            .copied()
            .collect()
    } else {
        katz_conjugate_gradient(adj, alpha, cfg)?
    };
    let mut v = CentralityVector::new(adj.level(), Measure::Katz, scores);
    v.alpha = Some(alpha);
    Ok(v)
}

/// `I - alpha A` is symmetric positive definite for admissible alpha.
fn katz_conjugate_gradient(
    adj: &LevelAdjacency,
    alpha: f64,
    cfg: &SpectralConfig,
) -> Result<Vec<f64>> {
    let n = adj.len();
    let apply = |x: &[f64], out: &mut [f64]| {
        adj.mul_vec(x, out);
        for (o, xi) in out.iter_mut().zip(x) {
            *o = xi - alpha * *o;
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut x = vec![1.0; n];
    let mut ax = vec![0.0; n];
    apply(&x, &mut ax);
    let mut r: Vec<f64> = ax.iter().map(|v| 1.0 - v).collect();
    let mut p = r.clone();
    let mut rr = dot(&r, &r);
    let target = cfg.tolerance * cfg.tolerance * n as f64;
    let mut ap = vec![0.0; n];
    for _ in 0..cfg.max_iterations {
        if rr <= target {
            return Ok(x);
        }
        apply(&p, &mut ap);
        let step = rr / dot(&p, &ap);
        for i in 0..n {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rr = rr_next;
    }
    Err(Error::NonConvergence(
        "conjugate gradients for Katz centrality".into(),
    ))
}

/// Principal eigenvector, entrywise nonnegative with unit Euclidean norm.
pub fn eigenvector_centrality(
    adj: &LevelAdjacency,
    cfg: &SpectralConfig,
) -> Result<CentralityVector> {
    if adj.interaction_count() == 0 {
        return Err(Error::NoPrincipalEigenvector(adj.level()));
    }
    let mut psi: Vec<f64> = if adj.len() <= cfg.dense_limit {
        let dec = SpectralDecomposition::compute(adj, cfg.dense_limit)?;
        dec.eigenvectors.column(0).iter().copied().collect()
    } else {
        power_iteration(adj, cfg)?.1
    };
    // Every vector in the principal eigenspace has a constant sign on each
    // component carrying lambda_1, so the absolute value stays an eigenvector.
    psi.iter_mut().for_each(|v| *v = v.abs());
    let norm = psi.iter().map(|v| v * v).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|v| *v /= norm);
    Ok(CentralityVector::new(
        adj.level(),
        Measure::Eigenvector,
        psi,
    ))
}

/// Number of series terms `L` with `e^l l^(L+1) / (L+1)! < SERIES_REMAINDER`.
fn series_terms(lambda: f64) -> usize {
    let lambda = lambda.max(1e-3);
    let mut log_term = lambda + lambda.ln();
    let mut l = 0usize;
    while log_term >= SERIES_REMAINDER.ln() {
        l += 1;
        log_term += lambda.ln() - ((l + 1) as f64).ln();
    }
    l
}

/// Column `j` of `exp(A)` by truncated Taylor series.
fn exp_column_series(adj: &LevelAdjacency, j: usize, terms: usize) -> Vec<f64> {
    let n = adj.len();
    let mut term = vec![0.0; n];
    term[j] = 1.0;
    let mut sum = term.clone();
    let mut next = vec![0.0; n];
    for l in 1..=terms {
        adj.mul_vec(&term, &mut next);
        let inv = 1.0 / l as f64;
        for (t, (nx, s)) in term.iter_mut().zip(next.iter().zip(sum.iter_mut())) {
            *t = nx * inv;
            *s += *t;
        }
    }
    sum
}

fn series_allowed(adj: &LevelAdjacency, cfg: &SpectralConfig) -> Result<()> {
    if cfg.series_fallback {
        Ok(())
    } else {
        Err(Error::DenseLimitExceeded {
            size: adj.len(),
            limit: cfg.dense_limit,
        })
    }
}

/// Diagonal of `exp(A)`.
pub fn subgraph_centrality(adj: &LevelAdjacency, cfg: &SpectralConfig) -> Result<CentralityVector> {
    let scores = if adj.len() <= cfg.dense_limit {
        SpectralDecomposition::compute(adj, cfg.dense_limit)?.diagonal(f64::exp)
    } else {
        series_allowed(adj, cfg)?;
        let terms = series_terms(principal_eigenvalue(adj, cfg)?);
        (0..adj.len())
            .into_par_iter()
            .map(|i| exp_column_series(adj, i, terms)[i])
            .collect()
    };
    Ok(CentralityVector::new(
        adj.level(),
        Measure::Subgraph,
        scores,
    ))
}

/// Entry `(i, j)` of `exp(A)`.
pub fn communicability(
    adj: &LevelAdjacency,
    i: usize,
    j: usize,
    cfg: &SpectralConfig,
) -> Result<f64> {
    if i >= adj.len() || j >= adj.len() {
        return Err(Error::InvalidArgument(format!(
            "simplex index out of range for level with {} simplices",
            adj.len()
        )));
    }
    if adj.len() <= cfg.dense_limit {
        Ok(SpectralDecomposition::compute(adj, cfg.dense_limit)?.entry(i, j, f64::exp))
    } else {
        series_allowed(adj, cfg)?;
        let terms = series_terms(principal_eigenvalue(adj, cfg)?);
        Ok(exp_column_series(adj, j, terms)[i])
    }
}

/// Factorially weighted sums of even- and odd-length walks,
/// `(cosh A, sinh A)`, by direct series summation. Terms are added until the
/// newest one is below `1e-18` of the running sum in Frobenius norm.
pub fn even_odd_walk_sums(adj: &LevelAdjacency) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = adj.len();
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut even = term.clone();
    let mut odd = DMatrix::<f64>::zeros(n, n);
    let bound = adj.max_degree() as f64;
    let mut l = 0usize;
    loop {
        l += 1;
        let mut next = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for &k in adj.neighbors(i) {
                let row = term.row(k).clone_owned();
                let mut out = next.row_mut(i);
                out += row;
            }
        }
        term = next / l as f64;
        let target = if l.is_multiple_of(2) {
            &mut even
        } else {
            &mut odd
        };
        *target += &term;
        let small = term.norm() <= 1e-18 * (even.norm() + odd.norm());
        if (l as f64) > bound && small {
            break;
        }
    }
    (even, odd)
}
