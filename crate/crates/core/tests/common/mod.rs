//! Reference implementations used only by the tests. Each one is written
//! from the definitions, without calling into the library's path machinery.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashSet;

use pathdp::generate::{generate_graph, Distributions, GraphFamily};
use pathdp::{Edge, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Path label compared as (weight, hop count, sorted edge indices).
#[derive(Debug, Clone)]
pub struct Label {
    pub weight: f64,
    pub edges: Vec<usize>,
}

impl Label {
    fn key(&self) -> (f64, usize, Vec<usize>) {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        (self.weight, self.edges.len(), sorted)
    }

    pub fn cmp(&self, other: &Label) -> Ordering {
        let (wa, ha, sa) = self.key();
        let (wb, hb, sb) = other.key();
        wa.total_cmp(&wb).then(ha.cmp(&hb)).then(sa.cmp(&sb))
    }
}

/// Weight-only all-pairs distances.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.weight);
        d[e.v][e.u] = d[e.v][e.u].min(e.weight);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Best path from `s` to every vertex by repeated relaxation over full
/// labels (edges listed in order from `s`).
pub fn label_correcting(g: &Graph, s: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut best: Vec<Option<Label>> = vec![None; n];
    best[s] = Some(Label {
        weight: 0.0,
        edges: Vec::new(),
    });
    loop {
        let mut changed = false;
        for (i, e) in g.edges().iter().enumerate() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let Some(la) = best[a].clone() else { continue };
                if la.edges.contains(&i) || b == s {
                    continue;
                }
                let mut edges = la.edges.clone();
                edges.push(i);
                let cand = Label {
                    weight: la.weight + e.weight,
                    edges,
                };
                let better = match &best[b] {
                    None => true,
                    Some(cur) => cand.cmp(cur) == Ordering::Less,
                };
                if better {
                    best[b] = Some(cand);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    best.into_iter().map(|l| l.expect("connected").edges).collect()
}

/// Best simple path from `s` to `t` by exhaustive enumeration.
pub fn brute_force_path(g: &Graph, s: usize, t: usize) -> Vec<usize> {
    fn walk(
        g: &Graph,
        at: usize,
        t: usize,
        seen: &mut Vec<bool>,
        cur: &mut Label,
        best: &mut Option<Label>,
    ) {
        if at == t {
            if best.as_ref().is_none_or(|b| cur.cmp(b) == Ordering::Less) {
                *best = Some(cur.clone());
            }
            return;
        }
        for (i, e) in g.edges().iter().enumerate() {
            let next = if e.u == at {
                e.v
            } else if e.v == at {
                e.u
            } else {
                continue;
            };
            if seen[next] {
                continue;
            }
            seen[next] = true;
            cur.edges.push(i);
            let w = cur.weight;
            cur.weight += e.weight;
            walk(g, next, t, seen, cur, best);
            cur.weight = w;
            cur.edges.pop();
            seen[next] = false;
        }
    }
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut best = None;
    let mut cur = Label {
        weight: 0.0,
        edges: Vec::new(),
    };
    walk(g, s, t, &mut seen, &mut cur, &mut best);
    best.expect("connected").edges
}

/// Vertices visited by an edge sequence starting at `s`.
pub fn vertices_along(g: &Graph, s: usize, edges: &[usize]) -> Vec<usize> {
    let mut out = vec![s];
    let mut at = s;
    for &e in edges {
        at = g.edge(e).other(at);
        out.push(at);
    }
    out
}

/// Random connected graph with small integer weights, so ties are common.
pub fn tie_heavy_graph(n: usize, extra: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut pairs = HashSet::new();
    let mut edges = Vec::new();
    for v in 1..n {
        let u = r.random_range(0..v);
        pairs.insert((u, v));
        edges.push((u, v));
    }
    let mut tries = 0;
    while edges.len() < n - 1 + extra && tries < 10 * (extra + 1) {
        tries += 1;
        let u = r.random_range(0..n);
        let v = r.random_range(0..n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if pairs.insert(key) {
            edges.push(key);
        }
    }
    // shuffle edge indices so index order says nothing about the structure
    for i in (1..edges.len()).rev() {
        let j = r.random_range(0..=i);
        edges.swap(i, j);
    }
    let edges = edges
        .into_iter()
        .map(|(u, v)| {
            Edge::new(
                u,
                v,
                r.random_range(1..=3) as f64,
                r.random_range(0..=1024) as f64 / 1024.0,
            )
        })
        .collect();
    Graph::new(n, edges).unwrap()
}

/// Graph from one of the generator families, with dyadic attributes.
pub fn family_graph(family: GraphFamily, n: usize, seed: u64) -> Graph {
    generate_graph(family, n, seed, &Distributions::dyadic()).unwrap()
}

/// Mixed-family sample: `(family, graph)` for `count` seeds.
pub fn mixed_graphs(count: usize, max_n: usize, seed: u64) -> Vec<(GraphFamily, Graph)> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let family = GraphFamily::ALL[i % GraphFamily::ALL.len()];
            let n = r.random_range(4..=max_n);
            (family, family_graph(family, n, r.random()))
        })
        .collect()
}

/// Cut vertices straight from the definition: endpoints, plus any interior
/// vertex of P(u, v) lying on another hub-pair path whose neighbour there
/// (before or after, missing counts as outside) is not on P(u, v).
pub fn literal_cut_vertices(hubs: &[usize], path_vertices: impl Fn(usize, usize) -> Vec<usize>) -> HashSet<usize> {
    let pairs: Vec<(usize, usize)> = hubs
        .iter()
        .flat_map(|&a| hubs.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let paths: Vec<Vec<usize>> = pairs.iter().map(|&(a, b)| path_vertices(a, b)).collect();
    let mut cut = HashSet::new();
    for (i, p) in paths.iter().enumerate() {
        let on_p: HashSet<usize> = p.iter().copied().collect();
        cut.insert(p[0]);
        cut.insert(*p.last().unwrap());
        for &w in &p[1..p.len() - 1] {
            let witness = paths.iter().enumerate().any(|(j, q)| {
                if j == i {
                    return false;
                }
                let Some(pos) = q.iter().position(|&x| x == w) else {
                    return false;
                };
                let pre = pos.checked_sub(1).map(|k| q[k]);
                let suc = q.get(pos + 1).copied();
                let outside = |x: Option<usize>| x.is_none_or(|x| !on_p.contains(&x));
                outside(pre) || outside(suc)
            });
            if witness {
                cut.insert(w);
            }
        }
    }
    cut
}

/// Deepest common ancestor by intersecting ancestor sets.
pub fn naive_lca(parent: impl Fn(usize) -> Option<usize>, u: usize, v: usize) -> usize {
    let mut up = HashSet::new();
    let mut x = Some(u);
    while let Some(a) = x {
        up.insert(a);
        x = parent(a);
    }
    let mut y = Some(v);
    while let Some(b) = y {
        if up.contains(&b) {
            return b;
        }
        y = parent(b);
    }
    unreachable!("vertices of one tree share the root")
}

/// Uniformly random labelled tree on `n` vertices with dyadic attributes,
/// built by attaching each vertex to an earlier random one and shuffling
/// labels.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut label: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = r.random_range(0..=i);
        label.swap(i, j);
    }
    let edges = (1..n)
        .map(|v| {
            // mix of bushy and deep shapes
            let lo = if r.random_bool(0.5) { v.saturating_sub(3) } else { 0 };
            let u = r.random_range(lo..v);
            Edge::new(label[u], label[v], 1.0, r.random_range(0..=1024) as f64 / 1024.0)
        })
        .collect();
    Graph::new(n, edges).unwrap()
}
