//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simcent::{CliqueComplex, Graph, LevelAdjacency};

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_numbered_nodes(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random complex whose levels `0..=max_level` each hold at most `cap`
/// simplices, by rejection.
pub fn small_complex(rng: &mut ChaCha8Rng, max_level: usize, cap: usize) -> CliqueComplex {
    loop {
        let n = rng.random_range(4..=9);
        let p = rng.random_range(0.2..0.8);
        let seed = rng.random();
        let c = CliqueComplex::build(erdos_renyi(n, p, seed), max_level);
        if c.counts().iter().all(|&k| k <= cap) {
            return c;
        }
    }
}

/// Lower/upper adjacency of level `k` from the set definitions.
pub fn definitional_adjacency(c: &CliqueComplex, k: usize) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let n = c.count(k);
    let g = c.graph();
    let mut lower = vec![vec![false; n]; n];
    let mut upper = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = c.simplex(k, i);
            let b = c.simplex(k, j);
            let mut union: Vec<usize> = a.iter().chain(b).copied().collect();
            union.sort_unstable();
            union.dedup();
            let shared = 2 * (k + 1) - union.len();
            let (l, u) = if k == 0 {
                (false, g.has_edge(a[0], b[0]))
            } else {
                let clique = union
                    .iter()
                    .all(|&x| union.iter().all(|&y| x == y || g.has_edge(x, y)));
                (shared == k, shared == k && clique)
            };
            lower[i][j] = l;
            lower[j][i] = l;
            upper[i][j] = u;
            upper[j][i] = u;
        }
    }
    (lower, upper)
}

pub fn dense_bool(adj: &LevelAdjacency) -> Vec<Vec<bool>> {
    let n = adj.len();
    (0..n)
        .map(|i| (0..n).map(|j| adj.contains(i, j)).collect())
        .collect()
}

pub fn floyd_warshall(a: &[Vec<bool>]) -> Vec<Vec<Option<u32>>> {
    let n = a.len();
    let mut d: Vec<Vec<Option<u32>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Some(0)
                    } else if a[i][j] {
                        Some(1)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (d[i][m], d[m][j]) {
                    if d[i][j].is_none_or(|z| x + y < z) {
                        d[i][j] = Some(x + y);
                    }
                }
            }
        }
    }
    d
}

/// Normalized closeness per component and the undefined flag.
pub fn closeness_oracle(d: &[Vec<Option<u32>>]) -> Vec<(f64, bool)> {
    d.iter()
        .map(|row| {
            let reached: Vec<u32> = row.iter().flatten().copied().collect();
            let farness: u32 = reached.iter().sum();
            if farness == 0 {
                (0.0, true)
            } else {
                ((reached.len() - 1) as f64 / farness as f64, false)
            }
        })
        .collect()
}

pub fn harmonic_oracle(d: &[Vec<Option<u32>>]) -> Vec<f64> {
    d.iter()
        .map(|row| {
            row.iter()
                .flatten()
                .filter(|&&x| x > 0)
                .map(|&x| 1.0 / x as f64)
                .sum()
        })
        .collect()
}

/// Unnormalized betweenness by listing every shortest path explicitly.
pub fn betweenness_oracle(a: &[Vec<bool>], d: &[Vec<Option<u32>>]) -> Vec<f64> {
    let n = a.len();
    let mut scores = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let Some(len) = d[s][t] else { continue };
            let mut paths = Vec::new();
            let mut stack = vec![s];
            extend_paths(a, d, t, len, &mut stack, &mut paths);
            let total = paths.len() as f64;
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    scores[v] += 1.0 / total;
                }
            }
        }
    }
    scores
}

fn extend_paths(
    a: &[Vec<bool>],
    d: &[Vec<Option<u32>>],
    t: usize,
    len: u32,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *stack.last().unwrap();
    if v == t {
        out.push(stack.clone());
        return;
    }
    let depth = stack.len() as u32;
    for w in 0..a.len() {
        if a[v][w] && d[w][t] == Some(len - depth) {
            stack.push(w);
            extend_paths(a, d, t, len, stack, out);
            stack.pop();
        }
    }
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
