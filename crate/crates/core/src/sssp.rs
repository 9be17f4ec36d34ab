//! Approximate-DP all-pairs counting from privatized shortest-path trees.
//!
//! A small hub set is sampled and a shortest-path tree is grown from every
//! hub. Each tree is privatized by recursive balanced partitioning: noisy
//! records cover tree paths, and every root distance is rebuilt from at most
//! `ceil(log2 n) + 1` records. Pairs touching a hub, or whose path crosses a
//! hub, are answered from that hub's tree; the rest sum Gaussian edge noise.

use rayon::prelude::*;

use crate::canon::{hub_count, sample_uniform_hubs};
use crate::error::{Error, Result};
use crate::graph::{Graph, HubSet, PathIndex, SpTree};
use crate::mechanisms::{
    check_approximate, sample, scales, strong_comp_params, streams, NoiseRng, NoiseSite, NoiseSpec,
    PrivacyBudget,
};
use crate::release::{CountRelease, PairTable, ReleaseRule};

/// Default hub-rate constant in `|S| = multiplier * zeta * ln n`.
pub const DEFAULT_HUB_MULTIPLIER: f64 = 1.0;

/// `zeta = sqrt(n) (ln n)^(-2.5)`.
pub fn sssp_zeta(n: usize) -> f64 {
    let n = n as f64;
    n.sqrt() * n.ln().powf(-2.5)
}

/// `min(n, max(1, ceil(multiplier * zeta * ln n)))`.
pub fn sssp_hub_count(n: usize, zeta: f64, multiplier: f64) -> usize {
    hub_count(n, zeta, multiplier).clamp(1, n.max(1))
}

/// Vertex with `2 * desc > size` whose children all have `2 * desc <= size`,
/// found by walking down from the root. Descendant counts include the vertex.
pub fn partition_vertex(tree: &SpTree) -> usize {
    let size = tree.len();
    let mut cur = tree.root();
    while let Some(&c) = tree
        .children(cur)
        .iter()
        .find(|&&c| 2 * tree.subtree_size(c) > size)
    {
        cur = c;
    }
    cur
}

/// Noisy attribute sum over the tree path from `from` down to `to`.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeRecord {
    pub from: usize,
    pub to: usize,
    /// Recursion depth at which the record was made.
    pub level: usize,
    pub exact: f64,
    pub noisy: f64,
}

/// Shortest-path tree with noisy records and per-vertex reconstruction plans.
#[derive(Debug, Clone)]
pub struct PrivateTree {
    tree: SpTree,
    records: Vec<TreeRecord>,
    plans: Vec<Vec<u32>>,
    estimates: Vec<f64>,
    noise: NoiseSpec,
}

struct Subproblem {
    anchor: usize,
    // tree order, anchor excluded
    members: Vec<usize>,
    base: Vec<u32>,
    level: usize,
}

pub fn private_tree(
    tree: SpTree,
    epsilon0: f64,
    delta0: f64,
    rng: &NoiseRng,
    noise_on: bool,
) -> Result<PrivateTree> {
    if !(epsilon0 > 0.0 && epsilon0 < 1.0 && delta0 > 0.0 && delta0 < 1.0) {
        return Err(Error::InvalidBudget(format!(
            "tree budget needs epsilon0, delta0 in (0, 1), got ({epsilon0}, {delta0})"
        )));
    }
    let n = tree.len();
    let noise = if n >= 2 {
        NoiseSpec::gaussian(scales::tree_sigma(epsilon0, delta0, n as f64))?
    } else {
        NoiseSpec::none()
    };
    let draw = NoiseSpec::gated(noise, noise_on);
    let mut rng = rng.clone();

    let mut records: Vec<TreeRecord> = Vec::new();
    let mut plans: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut tag = vec![usize::MAX; n];
    let mut desc = vec![0usize; n];
    let mut next_tag = 0usize;

    let root = tree.root();
    let mut stack = Vec::new();
    if n >= 2 {
        stack.push(Subproblem {
            anchor: root,
            members: tree.order().iter().copied().filter(|&v| v != root).collect(),
            base: Vec::new(),
            level: 0,
        });
    }

    let mut record = |records: &mut Vec<TreeRecord>, from: usize, to: usize, level: usize| {
        let exact = tree.root_distance(to) - tree.root_distance(from);
        records.push(TreeRecord {
            from,
            to,
            level,
            exact,
            noisy: exact + sample(&draw, &mut rng),
        });
        (records.len() - 1) as u32
    };

    while let Some(sub) = stack.pop() {
        let id = next_tag;
        next_tag += 1;
        let size = sub.members.len() + 1;
        tag[sub.anchor] = id;
        for &v in &sub.members {
            tag[v] = id;
            desc[v] = 1;
        }
        desc[sub.anchor] = size;
        for &v in sub.members.iter().rev() {
            let p = tree.parent(v).expect("members lie below the anchor");
            if p != sub.anchor {
                desc[p] += desc[v];
            }
        }
        let inside = |c: usize| tag[c] == id;

        let mut split = sub.anchor;
        while let Some(&c) = tree
            .children(split)
            .iter()
            .filter(|&&c| inside(c))
            .find(|&&c| 2 * desc[c] > size)
        {
            split = c;
        }

        // members of the subproblem below `top`, in tree order
        let below = |top: usize| -> Vec<usize> {
            let mut out = vec![top];
            let mut i = 0;
            while i < out.len() {
                out.extend(tree.children(out[i]).iter().copied().filter(|&c| inside(c)));
                i += 1;
            }
            out
        };

        if split != sub.anchor {
            let r = record(&mut records, sub.anchor, split, sub.level);
            let mut base = sub.base.clone();
            base.push(r);
            plans[split] = base.clone();
            let mut removed = vec![split];
            for &c in tree.children(split).iter().filter(|&&c| inside(c)) {
                let members = below(c);
                removed.extend(&members);
                stack.push(Subproblem {
                    anchor: split,
                    members,
                    base: base.clone(),
                    level: sub.level + 1,
                });
            }
            for v in removed {
                tag[v] = usize::MAX;
            }
            let rest: Vec<usize> = sub.members.iter().copied().filter(|&v| tag[v] == id).collect();
            if !rest.is_empty() {
                stack.push(Subproblem {
                    anchor: sub.anchor,
                    members: rest,
                    base: sub.base,
                    level: sub.level + 1,
                });
            }
        } else if size == 2 {
            let only = sub.members[0];
            let r = record(&mut records, sub.anchor, only, sub.level);
            let mut plan = sub.base;
            plan.push(r);
            plans[only] = plan;
        } else {
            for &c in tree.children(sub.anchor).iter().filter(|&&c| inside(c)) {
                stack.push(Subproblem {
                    anchor: sub.anchor,
                    members: below(c),
                    base: sub.base.clone(),
                    level: sub.level + 1,
                });
            }
        }
    }

    let estimates = plans
        .iter()
        .map(|plan| plan.iter().map(|&r| records[r as usize].noisy).sum())
        .collect();
    Ok(PrivateTree {
        tree,
        records,
        plans,
        estimates,
        noise,
    })
}

impl PrivateTree {
    pub fn tree(&self) -> &SpTree {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.tree.root()
    }

    pub fn records(&self) -> &[TreeRecord] {
        &self.records
    }

    /// Record indices summed for the root-to-`v` estimate.
    pub fn plan(&self, v: usize) -> &[u32] {
        &self.plans[v]
    }

    pub fn term_count(&self, v: usize) -> usize {
        self.plans[v].len()
    }

    pub fn max_term_count(&self) -> usize {
        self.plans.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Noise distribution of each record (`None` for a one-vertex tree).
    pub fn noise(&self) -> NoiseSpec {
        self.noise
    }

    /// Estimated attribute sum from the root to `v`.
    pub fn root_estimate(&self, v: usize) -> f64 {
        self.estimates[v]
    }

    /// Estimated attribute sum along the tree path between `u` and `v`.
    pub fn pair_estimate(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return 0.0;
        }
        let z = self.tree.lca(u, v);
        self.estimates[u] + self.estimates[v] - 2.0 * self.estimates[z]
    }

    /// Tree edges covered by record `index`, from its lower end upward.
    pub fn record_edges(&self, index: usize) -> Vec<usize> {
        let rec = &self.records[index];
        let mut out = Vec::new();
        let mut v = rec.to;
        while v != rec.from {
            out.push(self.tree.parent_edge(v).expect("record spans an ancestor path"));
            v = self.tree.parent(v).expect("record spans an ancestor path");
        }
        out
    }
}

/// One privatized tree per hub, built under the per-tree budget.
#[derive(Debug, Clone)]
pub struct TreeFleet {
    pub hubs: HubSet,
    /// Indexed by hub rank.
    pub trees: Vec<PrivateTree>,
    pub epsilon0: f64,
    pub delta0: f64,
}

impl TreeFleet {
    pub fn build(
        graph: &Graph,
        index: &PathIndex,
        hubs: HubSet,
        epsilon0: f64,
        delta0: f64,
        rng: &NoiseRng,
        noise_on: bool,
    ) -> Result<TreeFleet> {
        let trees = hubs
            .members()
            .par_iter()
            .enumerate()
            .map(|(rank, &h)| {
                let tree = SpTree::build(graph, index, h)?;
                let stream = rng.substream(streams::TREE_BASE + rank as u64);
                private_tree(tree, epsilon0, delta0, &stream, noise_on)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TreeFleet {
            hubs,
            trees,
            epsilon0,
            delta0,
        })
    }

    /// Tree rooted at hub `h`.
    pub fn tree_at(&self, h: usize) -> Option<&PrivateTree> {
        self.hubs.rank(h).map(|r| &self.trees[r])
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SsspConfig {
    pub hub_multiplier: f64,
    /// Overrides the default `zeta` when set.
    pub zeta: Option<f64>,
}

impl Default for SsspConfig {
    fn default() -> Self {
        SsspConfig {
            hub_multiplier: DEFAULT_HUB_MULTIPLIER,
            zeta: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SsspRelease {
    pub release: CountRelease,
    pub fleet: TreeFleet,
    pub noisy_edges: Vec<f64>,
}

pub fn sssp_asrq(
    graph: &Graph,
    index: &PathIndex,
    budget: PrivacyBudget,
    rng: &NoiseRng,
    noise_on: bool,
    config: &SsspConfig,
) -> Result<SsspRelease> {
    let (epsilon, delta) = (budget.epsilon(), budget.delta());
    check_approximate(epsilon, delta)?;
    let n = graph.n();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least 2 vertices".into()));
    }
    let zeta = config.zeta.unwrap_or_else(|| sssp_zeta(n));
    if !(zeta > 0.0 && config.hub_multiplier > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "zeta and multiplier must be positive (got {zeta}, {})",
            config.hub_multiplier
        )));
    }
    let count = sssp_hub_count(n, zeta, config.hub_multiplier);
    let hubs = sample_uniform_hubs(n, count, &mut rng.substream(streams::HUBS));
    let (epsilon0, delta0) = strong_comp_params(epsilon, delta, hubs.len())?;
    let fleet = TreeFleet::build(graph, index, hubs, epsilon0, delta0, rng, noise_on)?;

    let edge_spec = NoiseSpec::gaussian(scales::sssp_edge_sigma(epsilon, delta, n as f64))?;
    let edge_noise = NoiseSpec::gated(edge_spec, noise_on);
    let mut edge_rng = rng.substream(streams::EDGES);
    let noisy_edges: Vec<f64> = graph
        .edges()
        .iter()
        .map(|e| e.attribute + sample(&edge_noise, &mut edge_rng))
        .collect();

    let hubs = &fleet.hubs;
    let rows: Vec<(Vec<f64>, Vec<ReleaseRule>)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let row = index.row(u);
            let mut prefix = vec![0.0; n];
            let mut first = vec![None::<usize>; n];
            for v in row.order() {
                if let (Some(p), Some(e)) = (row.pred(v), row.pred_edge(v)) {
                    prefix[v] = prefix[p] + noisy_edges[e];
                    first[v] = first[p].or(hubs.contains(v).then_some(v));
                } else {
                    first[v] = hubs.contains(v).then_some(v);
                }
            }
            let own = fleet.tree_at(u);
            let mut answers = Vec::with_capacity(n - u - 1);
            let mut rules = Vec::with_capacity(n - u - 1);
            for v in u + 1..n {
                let (value, rule) = if let Some(t) = own {
                    (t.pair_estimate(u, v), ReleaseRule::HubEndpoint)
                } else if let Some(t) = fleet.tree_at(v) {
                    (t.pair_estimate(u, v), ReleaseRule::HubEndpoint)
                } else if let Some(x) = first[v] {
                    let t = fleet.tree_at(x).expect("x is a hub");
                    (t.pair_estimate(u, x) + t.pair_estimate(x, v), ReleaseRule::HubOnPath)
                } else {
                    (prefix[v], ReleaseRule::EdgeSum)
                };
                answers.push(value);
                rules.push(rule);
            }
            (answers, rules)
        })
        .collect();
    let (answer_rows, rule_rows): (Vec<_>, Vec<_>) = rows.into_iter().unzip();

    let tree_spec = NoiseSpec::gaussian(scales::tree_sigma(epsilon0, delta0, n as f64))?;
    let release = CountRelease {
        answers: PairTable::from_rows(n, answer_rows),
        rules: PairTable::from_rows(n, rule_rows),
        budget,
        noise_on,
        noise_sites: vec![
            NoiseSite {
                site: "sssp.tree_record",
                formula: scales::TREE_RECORD,
                spec: tree_spec,
            },
            NoiseSite {
                site: "sssp.edge",
                formula: scales::SSSP_EDGE,
                spec: edge_spec,
            },
        ],
    };
    Ok(SsspRelease {
        release,
        fleet,
        noisy_edges,
    })
}
