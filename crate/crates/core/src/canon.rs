//! Pure-DP all-pairs counting via canonical segments.
//!
//! Hubs are sampled uniformly. The shortest paths between hub pairs are cut
//! at every hub and at every vertex where three or more hub-pair path edges
//! meet; the resulting pieces (canonical segments) are edge-disjoint, so the
//! vector of segment sums has l1 sensitivity 1 and takes one Laplace draw per
//! segment. Every edge also gets one Laplace draw. A pair whose path holds two
//! or more hubs is answered as noisy edges to the first hub, the noisy segment
//! sum between first and last hub, then noisy edges to the end; other pairs
//! sum noisy edges only.

use rand::seq::index;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, HubSet, PathIndex};
use crate::mechanisms::{sample, scales, streams, NoiseRng, NoiseSite, NoiseSpec, PrivacyBudget};
use crate::release::{CountRelease, PairTable, ReleaseRule};

/// Default hub-rate constant in `|S| = multiplier * zeta * ln n`.
pub const DEFAULT_HUB_MULTIPLIER: f64 = 100.0;

/// `zeta = n^(1/3) (ln n)^(-2/3)`.
pub fn canon_zeta(n: usize) -> f64 {
    let n = n as f64;
    n.cbrt() * n.ln().powf(-2.0 / 3.0)
}

/// `min(n, ceil(multiplier * zeta * ln n))`.
pub fn hub_count(n: usize, zeta: f64, multiplier: f64) -> usize {
    let raw = (multiplier * zeta * (n as f64).ln()).ceil();
    if raw.is_finite() && raw < n as f64 {
        raw.max(0.0) as usize
    } else {
        n
    }
}

/// Uniform sample of `count` distinct vertices.
pub fn sample_uniform_hubs(n: usize, count: usize, rng: &mut NoiseRng) -> HubSet {
    let count = count.min(n);
    let picked = index::sample(rng.rng(), n, count);
    HubSet::new(n, picked.iter()).expect("sampled vertices are in range")
}

/// Hub set of size `min(n, ceil(multiplier * zeta * ln n))`, at least 2.
pub fn sample_hub_set(n: usize, zeta: f64, multiplier: f64, rng: &mut NoiseRng) -> Result<HubSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if !(zeta > 0.0 && multiplier > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "zeta and multiplier must be positive (got {zeta}, {multiplier})"
        )));
    }
    Ok(sample_uniform_hubs(n, hub_count(n, zeta, multiplier).max(2), rng))
}

/// Edge-contiguous subpath between two consecutive cut vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    /// Endpoints with the smaller vertex id first.
    pub ends: (usize, usize),
    /// Edges in order starting at `ends.0`.
    pub edges: Vec<usize>,
}

/// Cut vertices and canonical segments induced by a hub set.
///
/// Let H be the union of the edges of all hub-pair paths. A vertex is a cut
/// vertex exactly when it is a hub or has at least three incident H edges:
/// everywhere else all hub-pair paths through it enter and leave by the same
/// two edges. Canonical segments are then the maximal chains of H between
/// cut vertices, so each H edge belongs to exactly one segment.
#[derive(Debug, Clone)]
pub struct SegmentCatalog {
    hubs: HubSet,
    cut: Vec<bool>,
    segments: Vec<Segment>,
    segment_of_edge: Vec<u32>,
}

const NO_SEGMENT: u32 = u32::MAX;

impl SegmentCatalog {
    pub fn build(graph: &Graph, index: &PathIndex, hubs: &HubSet) -> Result<SegmentCatalog> {
        let s = hubs.len();
        if s < 2 {
            return Err(Error::InvalidParameter(format!(
                "a segment catalog needs at least 2 hubs, got {s}"
            )));
        }
        let n = graph.n();
        let members = hubs.members();

        let mut used = vec![false; graph.m()];
        let mut stamp = vec![usize::MAX; n];
        for (i, &x) in members.iter().enumerate() {
            let row = index.row(x);
            stamp[x] = i;
            for &z in members {
                let mut v = z;
                while stamp[v] != i {
                    stamp[v] = i;
                    used[row.pred_edge(v).expect("connected graph")] = true;
                    v = row.pred(v).expect("connected graph");
                }
            }
        }
        let mut degree = vec![0u32; n];
        for (e, _) in used.iter().enumerate().filter(|(_, &u)| u) {
            let edge = graph.edge(e);
            degree[edge.u] += 1;
            degree[edge.v] += 1;
        }
        let cut: Vec<bool> = (0..n).map(|w| hubs.contains(w) || degree[w] >= 3).collect();

        let mut segments = Vec::new();
        let mut segment_of_edge = vec![NO_SEGMENT; graph.m()];
        for c in (0..n).filter(|&c| cut[c]) {
            for &(first_step, first_edge) in graph.neighbors(c) {
                if !used[first_edge] || segment_of_edge[first_edge] != NO_SEGMENT {
                    continue;
                }
                let id = segments.len() as u32;
                let mut edges = vec![first_edge];
                segment_of_edge[first_edge] = id;
                let mut at = first_step;
                while !cut[at] {
                    let last = *edges.last().unwrap();
                    let &(next, e) = graph
                        .neighbors(at)
                        .iter()
                        .find(|&&(_, e)| used[e] && e != last)
                        .expect("non-cut vertices have two path edges");
                    edges.push(e);
                    segment_of_edge[e] = id;
                    at = next;
                }
                debug_assert_ne!(at, c, "a segment cannot close on itself");
                if c > at {
                    edges.reverse();
                }
                segments.push(Segment {
                    ends: (c.min(at), c.max(at)),
                    edges,
                });
            }
        }
        Ok(SegmentCatalog {
            hubs: hubs.clone(),
            cut,
            segments,
            segment_of_edge,
        })
    }

    pub fn hubs(&self) -> &HubSet {
        &self.hubs
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Segment holding `edge`, if the edge lies on a hub-pair path.
    pub fn segment_of_edge(&self, edge: usize) -> Option<usize> {
        let id = self.segment_of_edge[edge];
        (id != NO_SEGMENT).then_some(id as usize)
    }

    /// Whether `w` is a cut vertex for some hub pair.
    pub fn is_cut_vertex(&self, w: usize) -> bool {
        self.cut[w]
    }

    fn check_hubs(&self, u: usize, v: usize) -> Result<()> {
        if u != v && self.hubs.contains(u) && self.hubs.contains(v) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "({u}, {v}) is not a pair of distinct hubs"
            )))
        }
    }

    /// Cut vertices along P(u, v) for hubs `u`, `v`, in path order from `u`.
    pub fn cut_vertices(&self, index: &PathIndex, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_hubs(u, v)?;
        Ok(index
            .path_vertices(u, v)
            .into_iter()
            .filter(|&w| self.cut[w])
            .collect())
    }

    /// Segment ids whose concatenation is P(u, v), in order from `u`.
    pub fn decomposition(&self, index: &PathIndex, u: usize, v: usize) -> Result<Vec<u32>> {
        self.check_hubs(u, v)?;
        let verts = index.path_vertices(u, v);
        Ok(index
            .path_edges(u, v)
            .into_iter()
            .zip(verts)
            .filter(|&(_, w)| self.cut[w])
            .map(|(e, _)| self.segment_of_edge[e])
            .collect())
    }

    /// Sum of `per_segment` over the decomposition of P(x, z), for every hub
    /// pair; indexed by hub ranks.
    pub fn hub_pair_totals(&self, index: &PathIndex, per_segment: &[f64]) -> PairTable<f64> {
        let members = self.hubs.members();
        let s = members.len();
        let rows = members
            .par_iter()
            .enumerate()
            .map(|(i, &x)| {
                let row = index.row(x);
                let mut acc = vec![0.0; index.n()];
                for v in row.order() {
                    if let (Some(p), Some(e)) = (row.pred(v), row.pred_edge(v)) {
                        let id = self.segment_of_edge[e];
                        acc[v] = if self.cut[p] && id != NO_SEGMENT {
                            acc[p] + per_segment[id as usize]
                        } else {
                            acc[p]
                        };
                    }
                }
                members[i + 1..].iter().map(|&z| acc[z]).collect()
            })
            .collect();
        PairTable::from_rows(s, rows)
    }
}

/// Exact attribute sum of every canonical segment.
pub fn segment_sums(catalog: &SegmentCatalog, attributes: &[f64]) -> Vec<f64> {
    catalog
        .segments()
        .iter()
        .map(|s| s.edges.iter().map(|&e| attributes[e]).sum())
        .collect()
}

/// l1 change of the segment-sum vector after adding `delta_w` to one edge's
/// attribute.
pub fn segment_sensitivity_probe(
    graph: &Graph,
    catalog: &SegmentCatalog,
    edge: usize,
    delta_w: f64,
) -> Result<f64> {
    if edge >= graph.m() {
        return Err(Error::InvalidParameter(format!(
            "edge {edge} out of range (m = {})",
            graph.m()
        )));
    }
    let before = graph.attributes();
    let mut after = before.clone();
    after[edge] += delta_w;
    let a = segment_sums(catalog, &before);
    let b = segment_sums(catalog, &after);
    Ok(a.iter().zip(&b).map(|(x, y)| (y - x).abs()).sum())
}

#[derive(Debug, Clone, Copy)]
pub struct CanonConfig {
    pub hub_multiplier: f64,
    /// Overrides the default `zeta` when set.
    pub zeta: Option<f64>,
}

impl Default for CanonConfig {
    fn default() -> Self {
        CanonConfig {
            hub_multiplier: DEFAULT_HUB_MULTIPLIER,
            zeta: None,
        }
    }
}

/// Output of [`canon_apsd`] with the intermediate noisy tables.
#[derive(Debug, Clone)]
pub struct CanonRelease {
    pub release: CountRelease,
    pub catalog: SegmentCatalog,
    pub noisy_edges: Vec<f64>,
    pub noisy_segments: Vec<f64>,
    /// Noisy hub-to-hub sums, indexed by hub ranks.
    pub hub_pair_sums: PairTable<f64>,
}

pub fn canon_apsd(
    graph: &Graph,
    index: &PathIndex,
    budget: PrivacyBudget,
    rng: &NoiseRng,
    noise_on: bool,
    config: &CanonConfig,
) -> Result<CanonRelease> {
    if !budget.is_pure() {
        return Err(Error::InvalidBudget(format!(
            "the canonical-segment release is pure DP; got delta = {}",
            budget.delta()
        )));
    }
    let n = graph.n();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least 2 vertices".into()));
    }
    let zeta = config.zeta.unwrap_or_else(|| canon_zeta(n));
    let hubs = sample_hub_set(n, zeta, config.hub_multiplier, &mut rng.substream(streams::HUBS))?;
    let catalog = SegmentCatalog::build(graph, index, &hubs)?;

    let b = scales::canon_laplace(budget.epsilon());
    let segment_noise = NoiseSpec::gated(NoiseSpec::laplace(b)?, noise_on);
    let edge_noise = NoiseSpec::gated(NoiseSpec::laplace(b)?, noise_on);

    let mut seg_rng = rng.substream(streams::SEGMENTS);
    let noisy_segments: Vec<f64> = segment_sums(&catalog, &graph.attributes())
        .into_iter()
        .map(|x| x + sample(&segment_noise, &mut seg_rng))
        .collect();
    let mut edge_rng = rng.substream(streams::EDGES);
    let noisy_edges: Vec<f64> = graph
        .edges()
        .iter()
        .map(|e| e.attribute + sample(&edge_noise, &mut edge_rng))
        .collect();

    let hub_pair_sums = catalog.hub_pair_totals(index, &noisy_segments);

    let rows: Vec<(Vec<f64>, Vec<ReleaseRule>)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let row = index.row(u);
            let mut prefix = vec![0.0; n];
            let mut first = vec![None::<usize>; n];
            let mut last = vec![None::<usize>; n];
            for v in row.order() {
                match (row.pred(v), row.pred_edge(v)) {
                    (Some(p), Some(e)) => {
                        prefix[v] = prefix[p] + noisy_edges[e];
                        first[v] = first[p].or(hubs.contains(v).then_some(v));
                        last[v] = if hubs.contains(v) { Some(v) } else { last[p] };
                    }
                    _ => {
                        let own = hubs.contains(v).then_some(v);
                        first[v] = own;
                        last[v] = own;
                    }
                }
            }
            let mut answers = Vec::with_capacity(n - u - 1);
            let mut rules = Vec::with_capacity(n - u - 1);
            for v in u + 1..n {
                match (first[v], last[v]) {
                    (Some(x), Some(z)) if x != z => {
                        let (i, j) = (hubs.rank(x).unwrap(), hubs.rank(z).unwrap());
                        let between = hub_pair_sums.get(i, j);
                        answers.push(prefix[x] + between + (prefix[v] - prefix[z]));
                        rules.push(ReleaseRule::HubSegments);
                    }
                    _ => {
                        answers.push(prefix[v]);
                        rules.push(ReleaseRule::EdgeSum);
                    }
                }
            }
            (answers, rules)
        })
        .collect();
    let (answer_rows, rule_rows): (Vec<_>, Vec<_>) = rows.into_iter().unzip();

    let release = CountRelease {
        answers: PairTable::from_rows(n, answer_rows),
        rules: PairTable::from_rows(n, rule_rows),
        budget,
        noise_on,
        noise_sites: vec![
            NoiseSite {
                site: "canon.segment",
                formula: scales::CANON_SEGMENT,
                spec: NoiseSpec::laplace(b)?,
            },
            NoiseSite {
                site: "canon.edge",
                formula: scales::CANON_EDGE,
                spec: NoiseSpec::laplace(b)?,
            },
        ],
    };
    Ok(CanonRelease {
        release,
        catalog,
        noisy_edges,
        noisy_segments,
        hub_pair_sums,
    })
}
