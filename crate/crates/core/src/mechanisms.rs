//! Noise samplers, budget arithmetic and the noise scales used at each
//! injection site.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};

/// `(epsilon, delta)` with `epsilon > 0` and `0 <= delta < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrivacyBudget {
    epsilon: f64,
    delta: f64,
}

impl PrivacyBudget {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidBudget(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::InvalidBudget(format!(
                "delta must lie in [0, 1), got {delta}"
            )));
        }
        Ok(PrivacyBudget { epsilon, delta })
    }

    pub fn pure(epsilon: f64) -> Result<Self> {
        PrivacyBudget::new(epsilon, 0.0)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn is_pure(&self) -> bool {
        self.delta == 0.0
    }
}

/// Gaussian-mechanism regime: `epsilon` in (0, 1] and `delta` in (0, 1).
pub(crate) fn check_approximate(epsilon: f64, delta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidBudget(format!(
            "Gaussian noise needs epsilon in (0, 1], got {epsilon}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidBudget(format!(
            "Gaussian noise needs delta in (0, 1), got {delta}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseFamily {
    None,
    Laplace,
    Gaussian,
}

/// A zero-mean noise distribution. `scale` is the Laplace `b` or the
/// Gaussian standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    family: NoiseFamily,
    scale: f64,
}

impl NoiseSpec {
    pub fn none() -> Self {
        NoiseSpec {
            family: NoiseFamily::None,
            scale: 0.0,
        }
    }

    pub fn laplace(b: f64) -> Result<Self> {
        NoiseSpec::with_family(NoiseFamily::Laplace, b)
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        NoiseSpec::with_family(NoiseFamily::Gaussian, sigma)
    }

    fn with_family(family: NoiseFamily, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{family:?} scale must be positive and finite, got {scale}"
            )));
        }
        Ok(NoiseSpec { family, scale })
    }

    /// `spec` when `enabled`, otherwise the zero distribution.
    pub fn gated(spec: NoiseSpec, enabled: bool) -> Self {
        if enabled {
            spec
        } else {
            NoiseSpec::none()
        }
    }

    pub fn family(&self) -> NoiseFamily {
        self.family
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn variance(&self) -> f64 {
        match self.family {
            NoiseFamily::None => 0.0,
            NoiseFamily::Laplace => 2.0 * self.scale * self.scale,
            NoiseFamily::Gaussian => self.scale * self.scale,
        }
    }
}

/// Seeded ChaCha stream. Sub-streams share the seed and differ by stream id,
/// so work split across threads stays reproducible.
#[derive(Debug, Clone)]
pub struct NoiseRng {
    seed: u64,
    inner: ChaCha20Rng,
}

impl NoiseRng {
    pub fn new(seed: u64) -> Self {
        NoiseRng {
            seed,
            inner: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Fresh generator on stream `stream` of this seed.
    pub fn substream(&self, stream: u64) -> NoiseRng {
        let mut inner = ChaCha20Rng::seed_from_u64(self.seed);
        inner.set_stream(stream);
        NoiseRng {
            seed: self.seed,
            inner,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha20Rng {
        &mut self.inner
    }
}

/// Fixed stream ids so each noise source draws from its own sequence.
pub(crate) mod streams {
    pub const HUBS: u64 = 1;
    pub const EDGES: u64 = 2;
    pub const SEGMENTS: u64 = 3;
    pub const TREE_BASE: u64 = 1 << 32;
}

/// One draw from `spec`; the `None` family returns exactly 0.
pub fn sample(spec: &NoiseSpec, rng: &mut NoiseRng) -> f64 {
    match spec.family {
        NoiseFamily::None => 0.0,
        NoiseFamily::Laplace => {
            let e: f64 = rng.inner.sample(Exp1);
            if rng.inner.random::<bool>() {
                spec.scale * e
            } else {
                -spec.scale * e
            }
        }
        NoiseFamily::Gaussian => {
            let z: f64 = rng.inner.sample(StandardNormal);
            spec.scale * z
        }
    }
}

pub fn sample_many(spec: &NoiseSpec, rng: &mut NoiseRng, count: usize) -> Vec<f64> {
    (0..count).map(|_| sample(spec, rng)).collect()
}

/// Per-mechanism budget for `k` composed mechanisms so that, together with
/// one further `(epsilon/2, delta/2)` mechanism, the total stays within
/// `(epsilon, delta)`:
/// `epsilon0 = epsilon / (4 sqrt(2 k ln(4/delta)))`, `delta0 = delta / (4k)`.
pub fn strong_comp_params(epsilon: f64, delta: f64, k: usize) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    check_approximate(epsilon, delta)?;
    let k = k as f64;
    let epsilon0 = epsilon / (4.0 * (2.0 * k * (4.0 / delta).ln()).sqrt());
    Ok((epsilon0, delta / (4.0 * k)))
}

/// Gaussian-mechanism deviation `sigma = Δ2 sqrt(2 ln(1.25/delta)) / epsilon`.
pub fn gaussian_sigma(epsilon: f64, delta: f64, sensitivity_l2: f64) -> Result<f64> {
    check_approximate(epsilon, delta)?;
    if !(sensitivity_l2.is_finite() && sensitivity_l2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "l2 sensitivity must be positive, got {sensitivity_l2}"
        )));
    }
    Ok(sensitivity_l2 * (2.0 * (1.25 / delta).ln()).sqrt() / epsilon)
}

/// Identifies one noise injection site and the scale it used.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSite {
    pub site: &'static str,
    pub formula: &'static str,
    pub spec: NoiseSpec,
}

/// Scale formulas, one function per injection site.
pub mod scales {
    use super::*;

    pub const CANON_SEGMENT: &str = "Lap(2/eps)";
    pub const CANON_EDGE: &str = "Lap(2/eps)";
    pub const TREE_RECORD: &str = "N(0, (1/eps0^2) * ln(1.25/delta0) * ln(n))";
    pub const SSSP_EDGE: &str = "N(0, (4/eps^2) * ln(2.5/delta) * ln(n))";
    pub const BOTTLENECK_LAPLACE: &str = "Lap(1/eps)";
    pub const BOTTLENECK_GAUSSIAN: &str = "N(0, sigma = sqrt(2*ln(1.25/delta))/eps)";

    /// Laplace `b` for canonical segments and for edges in the pure counting
    /// algorithm.
    pub fn canon_laplace(epsilon: f64) -> f64 {
        2.0 / epsilon
    }

    /// Deviation of each private-tree record.
    pub fn tree_sigma(epsilon0: f64, delta0: f64, n: f64) -> f64 {
        ((1.25 / delta0).ln() * n.ln() / (epsilon0 * epsilon0)).sqrt()
    }

    /// Deviation of the per-edge noise in the approximate counting algorithm.
    pub fn sssp_edge_sigma(epsilon: f64, delta: f64, n: f64) -> f64 {
        (4.0 / (epsilon * epsilon) * (2.5 / delta).ln() * n.ln()).sqrt()
    }

    pub fn bottleneck_laplace(epsilon: f64) -> f64 {
        1.0 / epsilon
    }

    pub fn bottleneck_sigma(epsilon: f64, delta: f64) -> Result<f64> {
        gaussian_sigma(epsilon, delta, 1.0)
    }
}
