use std::collections::VecDeque;

use rayon::prelude::*;

use super::{CentralityVector, Measure};
use crate::adjacency::LevelAdjacency;
use crate::paths::{bfs, finite};

// Sources are processed in fixed blocks and the block sums added in order,
// so float results do not depend on the thread count.
const SOURCE_BLOCK: usize = 64;

pub fn degree_centrality(adj: &LevelAdjacency) -> CentralityVector {
    let scores = adj.degrees().into_iter().map(|d| d as f64).collect();
    CentralityVector::new(adj.level(), Measure::Degree, scores)
}

/// Reciprocal farness within the simplex's component. Normalization
/// multiplies by (component size - 1). A simplex alone in its component gets
/// 0 and is listed as undefined.
pub fn closeness(adj: &LevelAdjacency, normalized: bool) -> CentralityVector {
    let per_source: Vec<(u64, u64)> = (0..adj.len())
        .into_par_iter()
        .map_init(
            || (Vec::new(), VecDeque::new()),
            |(dist, queue), s| {
                bfs(adj, s, dist, queue);
                dist.iter()
                    .filter_map(|&d| finite(d))
                    .fold((0u64, 0u64), |(sum, reached), d| {
                        (sum + u64::from(d), reached + 1)
                    })
            },
        )
        .collect();
    let mut undefined = Vec::new();
    let scores = per_source
        .into_iter()
        .enumerate()
        .map(|(i, (farness, reached))| {
            if farness == 0 {
                undefined.push(i);
                0.0
            } else if normalized {
                (reached - 1) as f64 / farness as f64
            } else {
                1.0 / farness as f64
            }
        })
        .collect();
    let mut v = CentralityVector::new(adj.level(), Measure::Closeness, scores);
    v.normalized = normalized;
    v.undefined = undefined;
    v
}

/// Sum of reciprocal distances; unreachable simplices contribute 0.
pub fn harmonic_closeness(adj: &LevelAdjacency) -> CentralityVector {
    let scores = (0..adj.len())
        .into_par_iter()
        .map_init(
            || (Vec::new(), VecDeque::new()),
            |(dist, queue), s| {
                bfs(adj, s, dist, queue);
                dist.iter()
                    .filter_map(|&d| finite(d))
                    .filter(|&d| d > 0)
                    .map(|d| 1.0 / f64::from(d))
                    .sum()
            },
        )
        .collect();
    CentralityVector::new(adj.level(), Measure::Harmonic, scores)
}

/// Brandes dependencies of all targets on every vertex, from one source.
fn accumulate_source(adj: &LevelAdjacency, s: usize, acc: &mut [f64], ws: &mut BrandesWorkspace) {
    let n = adj.len();
    ws.dist.clear();
    ws.dist.resize(n, -1);
    ws.sigma.clear();
    ws.sigma.resize(n, 0.0);
    ws.delta.clear();
    ws.delta.resize(n, 0.0);
    ws.order.clear();
    ws.queue.clear();

    ws.dist[s] = 0;
    ws.sigma[s] = 1.0;
    ws.queue.push_back(s);
    while let Some(v) = ws.queue.pop_front() {
        ws.order.push(v);
        for &w in adj.neighbors(v) {
            if ws.dist[w] < 0 {
                ws.dist[w] = ws.dist[v] + 1;
                ws.queue.push_back(w);
            }
            if ws.dist[w] == ws.dist[v] + 1 {
                ws.sigma[w] += ws.sigma[v];
            }
        }
    }
    for &w in ws.order.iter().rev() {
        for &v in adj.neighbors(w) {
            if ws.dist[v] == ws.dist[w] - 1 {
                ws.delta[v] += ws.sigma[v] / ws.sigma[w] * (1.0 + ws.delta[w]);
            }
        }
        if w != s {
            acc[w] += ws.delta[w];
        }
    }
}

#[derive(Default)]
struct BrandesWorkspace {
    dist: Vec<i64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

/// Fraction of shortest paths between other pairs of simplices passing
/// through each simplex, summed over unordered pairs. Disconnected pairs
/// contribute nothing. Normalization divides by the number of pairs not
/// involving the simplex, `(n-1)(n-2)/2`; it is undefined below three
/// simplices, where every score is 0 and listed as undefined.
pub fn betweenness(adj: &LevelAdjacency, normalized: bool) -> CentralityVector {
    let n = adj.len();
    let sources: Vec<usize> = (0..n).collect();
    let blocks: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_BLOCK)
        .map(|block| {
            let mut acc = vec![0.0; n];
            let mut ws = BrandesWorkspace::default();
            for &s in block {
                accumulate_source(adj, s, &mut acc, &mut ws);
            }
            acc
        })
        .collect();
    let mut scores = vec![0.0; n];
    for block in blocks {
        for (s, b) in scores.iter_mut().zip(block) {
            *s += b;
        }
    }
    // Every unordered pair was seen from both endpoints.
    for s in &mut scores {
        *s /= 2.0;
    }
    let mut undefined = Vec::new();
    if normalized {
        if n < 3 {
            undefined = (0..n).collect();
            scores.iter_mut().for_each(|s| *s = 0.0);
        } else {
            let pairs = ((n - 1) * (n - 2) / 2) as f64;
            scores.iter_mut().for_each(|s| *s /= pairs);
        }
    }
    let mut v = CentralityVector::new(adj.level(), Measure::Betweenness, scores);
    v.normalized = normalized;
    v.undefined = undefined;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjacency::combined_adjacency;
    use crate::complex::CliqueComplex;
    use crate::families::{generate_p, generate_s, generate_t, reference_network};

    #[test]
    fn degree_examples() {
        let c = CliqueComplex::build(reference_network(), 3);
        let d = degree_centrality(&combined_adjacency(&c, 2).unwrap());
        assert_eq!(d.scores[c.find_labels(&["1", "2", "3"]).unwrap()], 0.0);
        assert_eq!(d.scores[c.find_labels(&["3", "4", "5"]).unwrap()], 3.0);
        let s = generate_s(7, 2).unwrap();
        let d = degree_centrality(&combined_adjacency(&s, 2).unwrap());
        assert!(d.scores.iter().all(|&x| x == 6.0));
    }

    #[test]
    fn closeness_examples() {
        let t = generate_t(2, &[1, 2, 4]).unwrap();
        let cl = closeness(&combined_adjacency(&t, 2).unwrap(), true);
        // The arm on the face opposite node 0 is the sole arm there.
        let lone_arm = t.find(&[1, 2, 3]).unwrap();
        assert_eq!(cl.scores[lone_arm], 7.0 / 13.0);

        let s = generate_s(6, 3).unwrap();
        let cl = closeness(&combined_adjacency(&s, 3).unwrap(), true);
        assert!(cl.scores.iter().all(|&x| x == 1.0));

        let p = generate_p(6, 2).unwrap();
        let cl = closeness(&combined_adjacency(&p, 2).unwrap(), true);
        assert_eq!(cl.scores[0], 2.0 / 6.0);
        assert_eq!(cl.scores[5], 2.0 / 6.0);
    }

    #[test]
    fn closeness_flags_isolated_simplices() {
        let c = CliqueComplex::build(reference_network(), 3);
        let cl = closeness(&combined_adjacency(&c, 2).unwrap(), true);
        let iso = c.find_labels(&["6", "7", "8"]).unwrap();
        assert_eq!(cl.scores[iso], 0.0);
        assert!(cl.undefined.contains(&iso));
        assert_eq!(cl.undefined.len(), 3);
    }

    #[test]
    fn harmonic_examples() {
        let c = CliqueComplex::build(reference_network(), 3);
        let h = harmonic_closeness(&combined_adjacency(&c, 2).unwrap());
        assert_eq!(h.scores[c.find_labels(&["2", "3", "4"]).unwrap()], 2.0);
        assert_eq!(h.scores[c.find_labels(&["6", "7", "8"]).unwrap()], 0.0);
        let s = generate_s(5, 1).unwrap();
        let h = harmonic_closeness(&combined_adjacency(&s, 1).unwrap());
        assert!(h.scores.iter().all(|&x| x == 4.0));
    }

    #[test]
    fn betweenness_examples() {
        for arms in [[1, 1, 1], [1, 0, 1], [0, 1, 1]] {
            let t = generate_t(2, &arms).unwrap();
            let b = betweenness(&combined_adjacency(&t, 2).unwrap(), true);
            assert_eq!(b.scores[t.find(&[0, 1, 2]).unwrap()], 1.0);
        }
        let s = generate_s(5, 2).unwrap();
        let b = betweenness(&combined_adjacency(&s, 2).unwrap(), true);
        assert!(b.scores.iter().all(|&x| x == 0.0));
        let p = generate_p(3, 1).unwrap();
        let b = betweenness(&combined_adjacency(&p, 1).unwrap(), true);
        assert_eq!(b.scores, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn normalized_betweenness_undefined_below_three() {
        let p = generate_p(2, 2).unwrap();
        let b = betweenness(&combined_adjacency(&p, 2).unwrap(), true);
        assert_eq!(b.undefined, vec![0, 1]);
    }
}
