//! Exact counting and bottleneck answers computed directly from the paths.

use rayon::prelude::*;

use crate::graph::{Graph, PathIndex};
use crate::release::PairTable;

/// Attribute sum along P(u, v), accumulated from `u`.
pub fn exact_count(graph: &Graph, index: &PathIndex, u: usize, v: usize) -> f64 {
    index.path_edges(u, v).iter().map(|&e| graph.attribute(e)).sum()
}

/// Smallest attribute on P(u, v); `+inf` when `u == v`.
pub fn exact_bottleneck(graph: &Graph, index: &PathIndex, u: usize, v: usize) -> f64 {
    index
        .path_edges(u, v)
        .iter()
        .map(|&e| graph.attribute(e))
        .fold(f64::INFINITY, f64::min)
}

/// [`exact_count`] for every pair `u < v`.
pub fn exact_count_table(graph: &Graph, index: &PathIndex) -> PairTable<f64> {
    table(graph, index, |prev, a| prev + a, 0.0)
}

/// [`exact_bottleneck`] for every pair `u < v`.
pub fn exact_bottleneck_table(graph: &Graph, index: &PathIndex) -> PairTable<f64> {
    table(graph, index, f64::min, f64::INFINITY)
}

fn table(
    graph: &Graph,
    index: &PathIndex,
    fold: impl Fn(f64, f64) -> f64 + Sync,
    start: f64,
) -> PairTable<f64> {
    let n = graph.n();
    let rows = (0..n)
        .into_par_iter()
        .map(|u| {
            let row = index.row(u);
            let mut acc = vec![start; n];
            for v in row.order() {
                if let (Some(p), Some(e)) = (row.pred(v), row.pred_edge(v)) {
                    acc[v] = fold(acc[p], graph.attribute(e));
                }
            }
            acc.split_off(u + 1)
        })
        .collect();
    PairTable::from_rows(n, rows)
}
