//! Unique all-pairs shortest paths.
//!
//! Paths are ordered by `(weight, hop count, sorted edge indices)`. The hop
//! count makes the order strictly increasing under extension by an edge, and
//! on equal-length edge sets the lexicographic comparison is unaffected by
//! adding a common disjoint suffix, so subpaths of a selected path are
//! themselves selected. Weights are compared as computed `f64` sums; inputs
//! that rely on exact ties should use exactly representable weights.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::Graph;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Augmented path length realizing a deterministic symbolic perturbation.
#[derive(Debug, Clone, PartialEq)]
pub struct AugDist {
    pub weight: f64,
    pub hops: usize,
    /// Edge indices of the path, sorted ascending.
    pub tiebreak: Vec<usize>,
}

impl AugDist {
    pub fn zero() -> Self {
        AugDist {
            weight: 0.0,
            hops: 0,
            tiebreak: Vec::new(),
        }
    }

    pub fn from_path(graph: &Graph, edges: &[usize]) -> Self {
        let mut tiebreak = edges.to_vec();
        tiebreak.sort_unstable();
        AugDist {
            weight: edges.iter().map(|&e| graph.edge(e).weight).sum(),
            hops: edges.len(),
            tiebreak,
        }
    }

    pub fn extend(&self, edge: usize, weight: f64) -> Self {
        let mut tiebreak = self.tiebreak.clone();
        let pos = tiebreak.partition_point(|&x| x < edge);
        tiebreak.insert(pos, edge);
        AugDist {
            weight: self.weight + weight,
            hops: self.hops + 1,
            tiebreak,
        }
    }
}

impl Eq for AugDist {}

impl PartialOrd for AugDist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AugDist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then(self.hops.cmp(&other.hops))
            .then_with(|| self.tiebreak.cmp(&other.tiebreak))
    }
}

/// Set of hub vertices with O(1) membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubSet {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl HubSet {
    pub fn new(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = vec![false; n];
        for v in vertices {
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            mask[v] = true;
        }
        let members = (0..n).filter(|&v| mask[v]).collect();
        Ok(HubSet { members, mask })
    }

    pub fn all(n: usize) -> Self {
        HubSet {
            members: (0..n).collect(),
            mask: vec![true; n],
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    /// Members in ascending vertex order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of `v` in [`HubSet::members`].
    pub fn rank(&self, v: usize) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }
}

/// Shortest-path data for every ordered pair, stored as one row per source.
#[derive(Debug, Clone)]
pub struct PathIndex {
    n: usize,
    dist: Vec<f64>,
    hops: Vec<u32>,
    pred_edge: Vec<u32>,
    pred: Vec<u32>,
    order: Vec<u32>,
}

/// Borrowed view of one source's shortest-path tree.
#[derive(Debug, Clone, Copy)]
pub struct SourceRow<'a> {
    pub source: usize,
    pub dist: &'a [f64],
    pub hops: &'a [u32],
    pred_edge: &'a [u32],
    pred: &'a [u32],
    order: &'a [u32],
}

impl<'a> SourceRow<'a> {
    /// Predecessor of `v` on the path from the source.
    #[inline]
    pub fn pred(&self, v: usize) -> Option<usize> {
        let p = self.pred[v];
        (p != NONE).then_some(p as usize)
    }

    /// Edge entering `v` on the path from the source.
    #[inline]
    pub fn pred_edge(&self, v: usize) -> Option<usize> {
        let e = self.pred_edge[v];
        (e != NONE).then_some(e as usize)
    }

    /// Vertices in settle order; every vertex appears after its predecessor.
    pub fn order(&self) -> impl Iterator<Item = usize> + 'a {
        self.order.iter().map(|&v| v as usize)
    }
}

#[derive(PartialEq)]
struct HeapKey {
    dist: f64,
    hops: u32,
    vertex: u32,
}

impl Eq for HeapKey {}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.hops.cmp(&self.hops))
            .then(other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct RowBuf<'a> {
    dist: &'a mut [f64],
    hops: &'a mut [u32],
    pred_edge: &'a mut [u32],
    pred: &'a mut [u32],
    order: &'a mut [u32],
}

fn sorted_path_edges(pred: &[u32], pred_edge: &[u32], mut v: usize, extra: Option<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = extra.into_iter().collect();
    while pred_edge[v] != NONE {
        out.push(pred_edge[v] as usize);
        v = pred[v] as usize;
    }
    out.sort_unstable();
    out
}

fn dijkstra(graph: &Graph, source: usize, row: RowBuf<'_>) {
    let RowBuf {
        dist,
        hops,
        pred_edge,
        pred,
        order,
    } = row;
    let n = graph.n();
    dist.fill(f64::INFINITY);
    hops.fill(u32::MAX);
    pred_edge.fill(NONE);
    pred.fill(NONE);
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    hops[source] = 0;
    heap.push(HeapKey {
        dist: 0.0,
        hops: 0,
        vertex: source as u32,
    });
    let mut count = 0;
    while let Some(HeapKey { vertex, .. }) = heap.pop() {
        let x = vertex as usize;
        if settled[x] {
            continue;
        }
        settled[x] = true;
        order[count] = vertex;
        count += 1;
        for &(y, e) in graph.neighbors(x) {
            if settled[y] {
                continue;
            }
            let nd = dist[x] + graph.edge(e).weight;
            let nh = hops[x] + 1;
            let ord = nd.total_cmp(&dist[y]).then(nh.cmp(&hops[y]));
            let better = match ord {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    let cand = sorted_path_edges(pred, pred_edge, x, Some(e));
                    let cur = sorted_path_edges(pred, pred_edge, y, None);
                    cand < cur
                }
            };
            if better {
                let push = ord == Ordering::Less;
                dist[y] = nd;
                hops[y] = nh;
                pred_edge[y] = e as u32;
                pred[y] = x as u32;
                if push {
                    heap.push(HeapKey {
                        dist: nd,
                        hops: nh,
                        vertex: y as u32,
                    });
                }
            }
        }
    }
    debug_assert_eq!(count, n, "graph must be connected");
}

impl PathIndex {
    /// Dijkstra from every source under the augmented order, in parallel.
    pub fn build(graph: &Graph) -> PathIndex {
        let n = graph.n();
        let mut index = PathIndex {
            n,
            dist: vec![0.0; n * n],
            hops: vec![0; n * n],
            pred_edge: vec![0; n * n],
            pred: vec![0; n * n],
            order: vec![0; n * n],
        };
        index
            .dist
            .par_chunks_mut(n)
            .zip(index.hops.par_chunks_mut(n))
            .zip(index.pred_edge.par_chunks_mut(n))
            .zip(index.pred.par_chunks_mut(n))
            .zip(index.order.par_chunks_mut(n))
            .enumerate()
            .for_each(|(source, ((((dist, hops), pred_edge), pred), order))| {
                dijkstra(
                    graph,
                    source,
                    RowBuf {
                        dist,
                        hops,
                        pred_edge,
                        pred,
                        order,
                    },
                )
            });
        index
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, source: usize) -> SourceRow<'_> {
        let r = source * self.n..(source + 1) * self.n;
        SourceRow {
            source,
            dist: &self.dist[r.clone()],
            hops: &self.hops[r.clone()],
            pred_edge: &self.pred_edge[r.clone()],
            pred: &self.pred[r.clone()],
            order: &self.order[r],
        }
    }

    /// Weight of P(u, v).
    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> f64 {
        self.dist[u * self.n + v]
    }

    /// Number of edges on P(u, v).
    #[inline]
    pub fn hops(&self, u: usize, v: usize) -> usize {
        self.hops[u * self.n + v] as usize
    }

    /// Vertex preceding `v` on P(u, v); `None` when `u == v`.
    #[inline]
    pub fn predecessor(&self, u: usize, v: usize) -> Option<usize> {
        let p = self.pred[u * self.n + v];
        (p != NONE).then_some(p as usize)
    }

    /// Edges of P(u, v) in order from `u`.
    pub fn path_edges(&self, u: usize, v: usize) -> Vec<usize> {
        let row = self.row(u);
        let mut out = Vec::with_capacity(self.hops(u, v));
        let mut x = v;
        while let Some(e) = row.pred_edge(x) {
            out.push(e);
            x = row.pred[x] as usize;
        }
        out.reverse();
        out
    }

    /// Vertices of P(u, v) from `u` to `v` inclusive.
    pub fn path_vertices(&self, u: usize, v: usize) -> Vec<usize> {
        let row = self.row(u);
        let mut out = Vec::with_capacity(self.hops(u, v) + 1);
        let mut x = v;
        out.push(x);
        while let Some(p) = row.pred(x) {
            out.push(p);
            x = p;
        }
        out.reverse();
        out
    }

    pub fn aug_dist(&self, graph: &Graph, u: usize, v: usize) -> AugDist {
        let mut d = AugDist::from_path(graph, &self.path_edges(u, v));
        // keep the stored sum, which is the one Dijkstra compared
        d.weight = self.distance(u, v);
        d
    }

    /// Number of hub vertices on P(u, v), endpoints included.
    pub fn hub_count_on_path(&self, u: usize, v: usize, hubs: &HubSet) -> usize {
        self.path_vertices(u, v)
            .into_iter()
            .filter(|&x| hubs.contains(x))
            .count()
    }

    /// First hub met walking P(u, v) from `u`.
    pub fn first_hub_on_path(&self, u: usize, v: usize, hubs: &HubSet) -> Option<usize> {
        self.path_vertices(u, v).into_iter().find(|&x| hubs.contains(x))
    }

    /// First and last hubs along P(u, v) from `u`, present only when the
    /// path holds at least two hubs.
    pub fn first_last_on_path(&self, u: usize, v: usize, hubs: &HubSet) -> Option<(usize, usize)> {
        let on_path: Vec<usize> = self
            .path_vertices(u, v)
            .into_iter()
            .filter(|&x| hubs.contains(x))
            .collect();
        match on_path.as_slice() {
            [first, .., last] => Some((*first, *last)),
            _ => None,
        }
    }
}
