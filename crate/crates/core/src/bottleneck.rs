//! Bottleneck (minimum-attribute) queries by perturbing every edge attribute
//! once and reporting the noisy attribute of each path's true argmin edge.

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{Graph, PathIndex};
use crate::mechanisms::{sample, scales, streams, NoiseRng, NoiseSite, NoiseSpec, PrivacyBudget};
use crate::release::{pair_errors, PairTable, PairValues};

#[derive(Debug, Clone)]
pub struct BottleneckRelease {
    pub noisy_attributes: Vec<f64>,
    /// Edge with the smallest original attribute on each path; internal only.
    pub argmin: PairTable<u32>,
    pub values: PairTable<f64>,
    pub budget: PrivacyBudget,
    pub noise_on: bool,
    pub noise_sites: Vec<NoiseSite>,
}

impl PairValues for BottleneckRelease {
    fn n(&self) -> usize {
        self.values.n()
    }

    fn value(&self, u: usize, v: usize) -> f64 {
        self.values.value(u, v)
    }
}

/// Laplace `Lap(1/eps)` when `delta == 0`, otherwise Gaussian with
/// `sigma = sqrt(2 ln(1.25/delta)) / eps`.
pub fn bottleneck_noise(budget: PrivacyBudget) -> Result<NoiseSite> {
    if budget.is_pure() {
        Ok(NoiseSite {
            site: "bottleneck.edge",
            formula: scales::BOTTLENECK_LAPLACE,
            spec: NoiseSpec::laplace(scales::bottleneck_laplace(budget.epsilon()))?,
        })
    } else {
        Ok(NoiseSite {
            site: "bottleneck.edge",
            formula: scales::BOTTLENECK_GAUSSIAN,
            spec: NoiseSpec::gaussian(scales::bottleneck_sigma(budget.epsilon(), budget.delta())?)?,
        })
    }
}

pub fn bottleneck_release(
    graph: &Graph,
    index: &PathIndex,
    budget: PrivacyBudget,
    rng: &NoiseRng,
    noise_on: bool,
) -> Result<BottleneckRelease> {
    let site = bottleneck_noise(budget)?;
    let noise = NoiseSpec::gated(site.spec, noise_on);
    let mut edge_rng = rng.substream(streams::EDGES);
    let noisy_attributes: Vec<f64> = graph
        .edges()
        .iter()
        .map(|e| e.attribute + sample(&noise, &mut edge_rng))
        .collect();

    let n = graph.n();
    let better = |a: usize, b: usize| {
        let (x, y) = (graph.attribute(a), graph.attribute(b));
        x < y || (x == y && a < b)
    };
    let argmin_rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let row = index.row(u);
            let mut best = vec![u32::MAX; n];
            for v in row.order() {
                if let (Some(p), Some(e)) = (row.pred(v), row.pred_edge(v)) {
                    let prev = best[p];
                    best[v] = if prev == u32::MAX || better(e, prev as usize) {
                        e as u32
                    } else {
                        prev
                    };
                }
            }
            best[u + 1..].to_vec()
        })
        .collect();
    let argmin = PairTable::from_rows(n, argmin_rows);
    let value_rows = (0..n)
        .map(|u| {
            (u + 1..n)
                .map(|v| noisy_attributes[argmin.get(u, v) as usize])
                .collect()
        })
        .collect();
    Ok(BottleneckRelease {
        noisy_attributes,
        argmin,
        values: PairTable::from_rows(n, value_rows),
        budget,
        noise_on,
        noise_sites: vec![site],
    })
}

/// Largest `|released - exact|` over all pairs.
pub fn bottleneck_error(release: &BottleneckRelease, exact: &impl PairValues) -> f64 {
    pair_errors(release, exact).0
}
