mod common;

use common::*;
use pathdp::generate::GraphFamily;
use pathdp::{Edge, Graph, HubSet, PathIndex, SpTree};
use proptest::prelude::*;

#[test]
fn distances_match_floyd_warshall() {
    for seed in 0..20 {
        for family in GraphFamily::ALL {
            let g = family_graph(family, 12, seed);
            let idx = PathIndex::build(&g);
            let fw = floyd_warshall(&g);
            for u in 0..12 {
                for v in 0..12 {
                    let d = idx.distance(u, v);
                    assert!((d - fw[u][v]).abs() <= 1e-12 * fw[u][v].max(1.0), "{family} seed {seed}");
                }
            }
        }
    }
}

#[test]
fn tie_break_matches_exhaustive_search() {
    for seed in 0..40 {
        let g = tie_heavy_graph(8, 6, seed);
        let idx = PathIndex::build(&g);
        for u in 0..8 {
            for v in 0..8 {
                if u != v {
                    assert_eq!(idx.path_edges(u, v), brute_force_path(&g, u, v), "seed {seed} ({u},{v})");
                }
            }
        }
    }
}

#[test]
fn tie_break_matches_label_correcting() {
    for seed in 100..130 {
        let g = tie_heavy_graph(20, 25, seed);
        let idx = PathIndex::build(&g);
        for u in 0..20 {
            let paths = label_correcting(&g, u);
            for v in 0..20 {
                assert_eq!(idx.path_edges(u, v), paths[v], "seed {seed} ({u},{v})");
            }
        }
    }
}

#[test]
fn four_cycle_picks_smaller_sorted_edge_list() {
    let edges = vec![
        Edge::new(0, 1, 1.0, 0.0),
        Edge::new(1, 2, 1.0, 0.0),
        Edge::new(2, 3, 1.0, 0.0),
        Edge::new(3, 0, 1.0, 0.0),
    ];
    let g = Graph::new(4, edges).unwrap();
    let idx = PathIndex::build(&g);
    // {0,1} < {2,3}
    assert_eq!(idx.path_edges(0, 2), vec![0, 1]);
    // {0,3} < {1,2}
    let mut p = idx.path_edges(1, 3);
    p.sort();
    assert_eq!(p, vec![0, 3]);
}

#[test]
fn path_graph_hops() {
    let g = family_graph(GraphFamily::Path, 6, 0);
    let idx = PathIndex::build(&g);
    assert_eq!(idx.hops(0, 5), 5);
    assert_eq!(idx.path_edges(0, 5).len(), 5);
}

fn check_structure(g: &Graph) {
    let idx = PathIndex::build(g);
    let n = g.n();
    for u in 0..n {
        for v in 0..n {
            let p = idx.path_vertices(u, v);
            let pe = idx.path_edges(u, v);
            assert_eq!(p.len(), pe.len() + 1);
            assert_eq!(idx.hops(u, v), pe.len());
            // symmetry
            let mut a = pe.clone();
            let mut b = idx.path_edges(v, u);
            a.sort();
            b.sort();
            assert_eq!(a, b, "symmetry ({u},{v})");
            // subpath consistency
            for (k, &x) in p.iter().enumerate() {
                assert_eq!(idx.path_edges(u, x), pe[..k].to_vec(), "prefix ({u},{v}) at {x}");
                let mut tail = idx.path_edges(x, v);
                let mut expect = pe[k..].to_vec();
                tail.sort();
                expect.sort();
                assert_eq!(tail, expect, "suffix ({u},{v}) at {x}");
            }
        }
    }
}

#[test]
fn subpath_consistency_exhaustive() {
    for seed in 0..10 {
        check_structure(&tie_heavy_graph(30, 30, seed));
        check_structure(&family_graph(GraphFamily::ALL[seed as usize % 5], 30, seed));
    }
}

#[test]
fn trees_reproduce_index_paths() {
    for seed in 0..15 {
        let g = family_graph(GraphFamily::ALL[seed as usize % 5], 12, seed);
        let idx = PathIndex::build(&g);
        for root in 0..12 {
            let t = SpTree::build(&g, &idx, root).unwrap();
            for v in 0..12 {
                let mut from_tree = t.edges_to_root(v);
                from_tree.reverse();
                assert_eq!(from_tree, idx.path_edges(root, v));
                assert_eq!(t.depth(v), idx.hops(root, v));
            }
        }
    }
}

#[test]
fn lca_matches_ancestor_intersection() {
    for seed in 0..20 {
        let g = random_tree(40, seed);
        let idx = PathIndex::build(&g);
        let t = SpTree::build(&g, &idx, (seed as usize * 7) % 40).unwrap();
        for u in 0..40 {
            assert_eq!(t.lca(u, u), u);
            assert_eq!(t.lca(t.root(), u), t.root());
            for v in 0..40 {
                assert_eq!(t.lca(u, v), naive_lca(|x| t.parent(x), u, v));
            }
        }
    }
}

#[test]
fn first_last_examples() {
    let g = family_graph(GraphFamily::Path, 6, 0);
    let idx = PathIndex::build(&g);
    let s = HubSet::new(6, [2, 4]).unwrap();
    assert_eq!(idx.first_last_on_path(0, 5, &s), Some((2, 4)));
    assert_eq!(idx.first_last_on_path(5, 0, &s), Some((4, 2)));
    assert_eq!(idx.first_last_on_path(0, 1, &s), None);
    assert_eq!(idx.hub_count_on_path(0, 5, &s), 2);
    let both = HubSet::new(6, [1, 3]).unwrap();
    assert_eq!(idx.first_last_on_path(1, 3, &both), Some((1, 3)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn augmented_distance_weight_is_plain_distance(seed in any::<u64>(), n in 4usize..24, extra in 0usize..30) {
        let g = tie_heavy_graph(n, extra, seed);
        let idx = PathIndex::build(&g);
        let fw = floyd_warshall(&g);
        for u in 0..n {
            for v in 0..n {
                let aug = idx.aug_dist(&g, u, v);
                prop_assert_eq!(aug.weight, fw[u][v]);
                prop_assert_eq!(aug.hops, idx.hops(u, v));
            }
        }
    }

    #[test]
    fn first_hub_precedes_last(seed in any::<u64>(), n in 4usize..24, picks in proptest::collection::vec(0usize..24, 1..6)) {
        let g = tie_heavy_graph(n, n / 2, seed);
        let idx = PathIndex::build(&g);
        let hubs = HubSet::new(n, picks.into_iter().map(|x| x % n)).unwrap();
        for u in 0..n {
            for v in 0..n {
                let count = idx.hub_count_on_path(u, v, &hubs);
                match idx.first_last_on_path(u, v, &hubs) {
                    Some((x, z)) => {
                        prop_assert!(count >= 2);
                        prop_assert!(idx.hops(u, x) < idx.hops(u, z));
                        prop_assert_eq!(idx.first_hub_on_path(u, v, &hubs), Some(x));
                    }
                    None => prop_assert!(count < 2),
                }
            }
        }
    }
}
