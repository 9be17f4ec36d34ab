//! Error-scaling experiments: generate graphs, release, compare with the
//! exact answers, and fit a log-log slope of max error against `n`.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use crate::bottleneck::bottleneck_release;
use crate::canon::{canon_apsd, CanonConfig};
use crate::error::{Error, Result};
use crate::generate::{generate_graph, Distributions, GraphFamily};
use crate::graph::{Graph, PathIndex};
use crate::mechanisms::{NoiseRng, PrivacyBudget};
use crate::oracle::{exact_bottleneck_table, exact_count_table};
use crate::release::{pair_errors, PairTable};
use crate::sssp::{sssp_asrq, SsspConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Algorithm {
    Canon,
    Sssp,
    BottleneckPure,
    BottleneckGauss,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Canon => "canon",
            Algorithm::Sssp => "sssp",
            Algorithm::BottleneckPure => "bottleneck-pure",
            Algorithm::BottleneckGauss => "bottleneck-gauss",
        }
    }

    pub fn is_bottleneck(&self) -> bool {
        matches!(self, Algorithm::BottleneckPure | Algorithm::BottleneckGauss)
    }

    /// `delta` used when none is given.
    pub fn default_delta(&self) -> f64 {
        match self {
            Algorithm::Canon | Algorithm::BottleneckPure => 0.0,
            Algorithm::Sssp | Algorithm::BottleneckGauss => 0.01,
        }
    }

    /// Budget and noise flag for `epsilon` and an optional `delta`.
    /// `epsilon = +inf` switches noise off; the budget then carries
    /// `epsilon = 1` only to satisfy validation.
    pub fn budget(&self, epsilon: f64, delta: Option<f64>) -> Result<(PrivacyBudget, bool)> {
        let delta = delta.unwrap_or_else(|| self.default_delta());
        match self {
            Algorithm::BottleneckPure if delta != 0.0 => {
                return Err(Error::InvalidBudget(format!(
                    "bottleneck-pure uses Laplace noise and needs delta = 0, got {delta}"
                )))
            }
            Algorithm::BottleneckGauss | Algorithm::Sssp if delta == 0.0 => {
                return Err(Error::InvalidBudget(format!(
                    "{} uses Gaussian noise and needs delta > 0",
                    self.name()
                )))
            }
            _ => {}
        }
        if epsilon == f64::INFINITY {
            Ok((PrivacyBudget::new(1.0, delta)?, false))
        } else {
            Ok((PrivacyBudget::new(epsilon, delta)?, true))
        }
    }

    /// Runs the algorithm and returns the released answer for every pair.
    pub fn release(
        &self,
        graph: &Graph,
        index: &PathIndex,
        budget: PrivacyBudget,
        rng: &NoiseRng,
        noise_on: bool,
        hub_multiplier: Option<f64>,
    ) -> Result<PairTable<f64>> {
        match self {
            Algorithm::Canon => {
                let mut config = CanonConfig::default();
                if let Some(m) = hub_multiplier {
                    config.hub_multiplier = m;
                }
                Ok(canon_apsd(graph, index, budget, rng, noise_on, &config)?.release.answers)
            }
            Algorithm::Sssp => {
                let mut config = SsspConfig::default();
                if let Some(m) = hub_multiplier {
                    config.hub_multiplier = m;
                }
                Ok(sssp_asrq(graph, index, budget, rng, noise_on, &config)?.release.answers)
            }
            Algorithm::BottleneckPure | Algorithm::BottleneckGauss => {
                Ok(bottleneck_release(graph, index, budget, rng, noise_on)?.values)
            }
        }
    }

    /// Exact answers the release is compared against.
    pub fn exact(&self, graph: &Graph, index: &PathIndex) -> PairTable<f64> {
        if self.is_bottleneck() {
            exact_bottleneck_table(graph, index)
        } else {
            exact_count_table(graph, index)
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub family: GraphFamily,
    pub sizes: Vec<usize>,
    /// `+inf` disables noise.
    pub epsilon: f64,
    pub delta: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    pub hub_multiplier: Option<f64>,
    pub distributions: Distributions,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, family: GraphFamily, sizes: Vec<usize>) -> Self {
        ExperimentConfig {
            algorithm,
            family,
            sizes,
            epsilon: 1.0,
            delta: None,
            trials: 1,
            seed: 0,
            hub_multiplier: None,
            distributions: Distributions::default(),
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::InvalidParameter("no sizes given".into()));
        }
        if let Some(&n) = self.sizes.iter().find(|&&n| n < 4) {
            return Err(Error::InvalidParameter(format!("sizes must be at least 4, got {n}")));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if let Some(m) = self.hub_multiplier {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "hub multiplier must be positive, got {m}"
                )));
            }
        }
        self.algorithm.budget(self.epsilon, self.delta)?;
        Ok(())
    }
}

/// One row of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub n: usize,
    pub trial: usize,
    pub max_err: f64,
    pub mean_err: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub algorithm: Algorithm,
    pub rows: Vec<TrialResult>,
    /// Fitted slope of ln(mean max error) against ln n, smallest size
    /// excluded; `None` with fewer than 3 sizes or a non-positive error.
    pub slope: Option<f64>,
}

impl ErrorReport {
    fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.rows.iter().map(|r| r.n).collect();
        sizes.sort_unstable();
        sizes.dedup();
        sizes
    }

    /// Mean over trials of the max error, per size in ascending order.
    pub fn mean_max_by_size(&self) -> Vec<(usize, f64)> {
        self.sizes()
            .into_iter()
            .map(|n| {
                let errs: Vec<f64> = self.rows.iter().filter(|r| r.n == n).map(|r| r.max_err).collect();
                (n, errs.iter().sum::<f64>() / errs.len() as f64)
            })
            .collect()
    }

    /// Median over trials of the max error, per size in ascending order.
    pub fn median_max_by_size(&self) -> Vec<(usize, f64)> {
        self.sizes()
            .into_iter()
            .map(|n| {
                let errs: Vec<f64> = self.rows.iter().filter(|r| r.n == n).map(|r| r.max_err).collect();
                (n, median(errs))
            })
            .collect()
    }

    /// Slope fitted separately for each trial index, smallest size excluded.
    pub fn trial_slopes(&self) -> Vec<Option<f64>> {
        let sizes = self.sizes();
        let trials = self.rows.iter().map(|r| r.trial + 1).max().unwrap_or(0);
        (0..trials)
            .map(|t| {
                let pts: Vec<(usize, f64)> = self
                    .rows
                    .iter()
                    .filter(|r| r.trial == t)
                    .map(|r| (r.n, r.max_err))
                    .collect();
                (sizes.len() >= 3).then(|| fit_loglog_slope(&drop_smallest(pts))).flatten()
            })
            .collect()
    }

    /// CSV with header `n,trial,max_err,mean_err,seconds`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "trial", "max_err", "mean_err", "seconds"])?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.trial.to_string(),
                r.max_err.to_string(),
                r.mean_err.to_string(),
                format!("{:.6}", r.seconds),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    assert!(!xs.is_empty(), "median of nothing");
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

fn drop_smallest(mut pts: Vec<(usize, f64)>) -> Vec<(usize, f64)> {
    pts.sort_by_key(|p| p.0);
    if let Some(&(smallest, _)) = pts.first() {
        pts.retain(|p| p.0 != smallest);
    }
    pts
}

/// Least-squares slope of `ln y` against `ln n`. Needs two distinct sizes
/// and positive `y` everywhere.
pub fn fit_loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|&(n, y)| n == 0 || !(y > 0.0 && y.is_finite())) {
        return None;
    }
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

/// Stateless seed derivation (SplitMix64 over the parts).
pub fn derive_seed(seed: u64, parts: &[u64]) -> u64 {
    let mut z = seed;
    for &p in parts {
        z = z.wrapping_add(p).wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

/// Graph seed for trial `trial` at size `n`.
pub fn graph_seed(seed: u64, n: usize, trial: usize) -> u64 {
    derive_seed(seed, &[n as u64, trial as u64, 0])
}

/// Noise seed for trial `trial` at size `n`.
pub fn noise_seed(seed: u64, n: usize, trial: usize) -> u64 {
    derive_seed(seed, &[n as u64, trial as u64, 1])
}

pub fn run_trial(config: &ExperimentConfig, n: usize, trial: usize) -> Result<TrialResult> {
    let (budget, noise_on) = config.algorithm.budget(config.epsilon, config.delta)?;
    let graph = generate_graph(
        config.family,
        n,
        graph_seed(config.seed, n, trial),
        &config.distributions,
    )?;
    let start = Instant::now();
    let index = PathIndex::build(&graph);
    let rng = NoiseRng::new(noise_seed(config.seed, n, trial));
    let released = config
        .algorithm
        .release(&graph, &index, budget, &rng, noise_on, config.hub_multiplier)?;
    let seconds = start.elapsed().as_secs_f64();
    let exact = config.algorithm.exact(&graph, &index);
    let (max_err, mean_err) = pair_errors(&released, &exact);
    Ok(TrialResult {
        n,
        trial,
        max_err,
        mean_err,
        seconds,
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ErrorReport> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.sizes.len() * config.trials);
    for &n in &config.sizes {
        let batch = (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial(config, n, t))
            .collect::<Result<Vec<_>>>()?;
        rows.extend(batch);
    }
    let mut report = ErrorReport {
        algorithm: config.algorithm,
        rows,
        slope: None,
    };
    let means = report.mean_max_by_size();
    if means.len() >= 3 {
        report.slope = fit_loglog_slope(&drop_smallest(means));
    }
    if let Some(path) = &config.output {
        let file = std::fs::File::create(path)?;
        report.write_csv(std::io::BufWriter::new(file))?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(usize, f64)> = [64usize, 128, 256, 512].iter().map(|&n| (n, 3.0 * (n as f64).powf(0.4))).collect();
        assert!((fit_loglog_slope(&pts).unwrap() - 0.4).abs() < 1e-12);
        assert!(fit_loglog_slope(&pts[..1]).is_none());
        assert!(fit_loglog_slope(&[(64, 0.0), (128, 1.0)]).is_none());
    }

    #[test]
    fn noise_off_gives_zero_error_and_no_slope() {
        let mut cfg = ExperimentConfig::new(Algorithm::Canon, GraphFamily::Path, vec![8, 16, 32]);
        cfg.epsilon = f64::INFINITY;
        cfg.trials = 2;
        cfg.distributions = Distributions::dyadic();
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert!(report.rows.iter().all(|r| r.max_err == 0.0 && r.mean_err == 0.0));
        assert!(report.slope.is_none());
    }

    #[test]
    fn budget_rules() {
        assert!(Algorithm::Sssp.budget(2.0, Some(0.0)).is_err());
        assert!(Algorithm::BottleneckPure.budget(1.0, Some(0.1)).is_err());
        assert!(Algorithm::BottleneckGauss.budget(1.0, Some(0.0)).is_err());
        let (b, on) = Algorithm::Canon.budget(f64::INFINITY, None).unwrap();
        assert!(!on && b.is_pure());
        let (b, on) = Algorithm::Sssp.budget(0.5, None).unwrap();
        assert!(on && b.delta() == 0.01);
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::new(Algorithm::Canon, GraphFamily::Path, vec![3]);
        assert!(cfg.validate().is_err());
        cfg.sizes = vec![8];
        cfg.trials = 0;
        assert!(cfg.validate().is_err());
        cfg.trials = 1;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn seeds_differ_by_role() {
        assert_ne!(graph_seed(1, 64, 0), noise_seed(1, 64, 0));
        assert_ne!(graph_seed(1, 64, 0), graph_seed(1, 64, 1));
        assert_eq!(graph_seed(1, 64, 0), graph_seed(1, 64, 0));
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
