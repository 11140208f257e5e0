mod common;

use common::*;
use proptest::prelude::*;
use simcent::adjacency::{combined_adjacency, lower_adjacency, upper_adjacency};
use simcent::paths::{
    connected_components, shortest_distances, LevelPathSummary, DEFAULT_MATRIX_LIMIT,
};
use simcent::CliqueComplex;

fn complex(n: usize, p: f64, seed: u64) -> CliqueComplex {
    CliqueComplex::build(erdos_renyi(n, p, seed), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplices_are_cliques_in_lexicographic_order(n in 2usize..14, p in 0.1f64..0.9, seed in any::<u64>()) {
        let c = complex(n, p, seed);
        let g = c.graph();
        for k in 0..=3 {
            let level = c.level(k).unwrap();
            let tuples: Vec<&[usize]> = level.iter().collect();
            prop_assert!(tuples.windows(2).all(|w| w[0] < w[1]));
            for (id, s) in tuples.iter().enumerate() {
                prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(s.iter().all(|&u| s.iter().all(|&v| u == v || g.has_edge(u, v))));
                prop_assert_eq!(c.find(s), Some(id));
            }
        }
        prop_assert_eq!(c.count(1), g.edge_count());
    }

    #[test]
    fn adjacencies_match_set_definitions(n in 2usize..12, p in 0.1f64..0.9, seed in any::<u64>()) {
        let c = complex(n, p, seed);
        for k in 0..=2 {
            let (lo, up) = definitional_adjacency(&c, k);
            let lower = lower_adjacency(&c, k).unwrap();
            let upper = upper_adjacency(&c, k).unwrap();
            let combined = combined_adjacency(&c, k).unwrap();
            for i in 0..c.count(k) {
                for j in 0..c.count(k) {
                    prop_assert_eq!(upper.contains(i, j), up[i][j]);
                    prop_assert_eq!(upper.contains(i, j), upper.contains(j, i));
                    if k > 0 {
                        prop_assert_eq!(lower.contains(i, j), lo[i][j]);
                        prop_assert!(!upper.contains(i, j) || lower.contains(i, j));
                        prop_assert_eq!(combined.contains(i, j), lo[i][j] && !up[i][j]);
                    } else {
                        prop_assert_eq!(combined.contains(i, j), up[i][j]);
                    }
                }
            }
        }
    }

    #[test]
    fn edge_degree_identity(n in 2usize..16, p in 0.1f64..0.9, seed in any::<u64>()) {
        let c = complex(n, p, seed);
        let g = c.graph();
        let deg = combined_adjacency(&c, 1).unwrap().degrees();
        for (id, &d) in deg.iter().enumerate() {
            let e = c.simplex(1, id);
            let t = c.cofaces(2, id).len();
            prop_assert_eq!(d + 2 + 2 * t, g.degree(e[0]) + g.degree(e[1]));
        }
    }

    #[test]
    fn degree_sums_count_interactions(n in 2usize..14, p in 0.1f64..0.9, seed in any::<u64>()) {
        let c = complex(n, p, seed);
        for k in 0..=2 {
            let a = combined_adjacency(&c, k).unwrap();
            prop_assert_eq!(a.degrees().iter().sum::<usize>(), 2 * a.interaction_count());
        }
    }

    #[test]
    fn bfs_distances_match_floyd_warshall(n in 2usize..10, p in 0.2f64..0.8, seed in any::<u64>()) {
        let c = complex(n, p, seed);
        for k in 0..=2 {
            if c.count(k) > 30 {
                continue;
            }
            let adj = combined_adjacency(&c, k).unwrap();
            let fw = floyd_warshall(&dense_bool(&adj));
            let d = shortest_distances(&c, k, DEFAULT_MATRIX_LIMIT).unwrap();
            let comps = connected_components(&adj);
            for (i, row) in fw.iter().enumerate() {
                for (j, &want) in row.iter().enumerate() {
                    prop_assert_eq!(d.get(i, j), want);
                    prop_assert_eq!(want.is_some(), comps.label(i) == comps.label(j));
                }
            }
        }
    }

    #[test]
    fn metric_axioms(n in 2usize..12, p in 0.1f64..0.9, seed in any::<u64>()) {
        let c = complex(n, p, seed);
        for k in 0..=2 {
            let d = shortest_distances(&c, k, DEFAULT_MATRIX_LIMIT).unwrap();
            let m = d.len();
            for i in 0..m {
                prop_assert_eq!(d.get(i, i), Some(0));
                for j in 0..m {
                    prop_assert_eq!(d.get(i, j), d.get(j, i));
                    if i != j {
                        prop_assert!(d.get(i, j) != Some(0));
                    }
                    for l in 0..m {
                        if let (Some(a), Some(b)) = (d.get(i, l), d.get(l, j)) {
                            prop_assert!(d.get(i, j).unwrap() <= a + b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn streaming_summary_agrees_with_matrix(n in 2usize..14, p in 0.1f64..0.9, seed in any::<u64>()) {
        let c = complex(n, p, seed);
        for k in 0..=2 {
            let adj = combined_adjacency(&c, k).unwrap();
            let d = shortest_distances(&c, k, DEFAULT_MATRIX_LIMIT).unwrap();
            let s = LevelPathSummary::compute(&adj);
            prop_assert_eq!(s.diameter(), d.diameter());
            let from_matrix = d.average_path_lengths();
            let streamed: Vec<_> = s.components.iter().map(|c| c.path_length).collect();
            prop_assert_eq!(from_matrix, streamed);
            for i in 0..adj.len() {
                prop_assert_eq!(s.eccentricity[i], d.eccentricity(i));
            }
        }
    }
}

#[test]
fn depth_is_enforced() {
    let c = CliqueComplex::build(simcent::families::reference_network(), 2);
    assert!(matches!(
        combined_adjacency(&c, 2),
        Err(simcent::Error::InsufficientDepth { .. })
    ));
    assert!(matches!(
        combined_adjacency(&c, 5),
        Err(simcent::Error::LevelOutOfRange { .. })
    ));
}
