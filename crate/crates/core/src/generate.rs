//! Seeded random graph families.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Attempts allowed for families that resample until connected.
pub const CONNECT_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum GraphFamily {
    Path,
    Grid,
    ErdosRenyi,
    RandomGeometric,
    RandomTree,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 5] = [
        GraphFamily::Path,
        GraphFamily::Grid,
        GraphFamily::ErdosRenyi,
        GraphFamily::RandomGeometric,
        GraphFamily::RandomTree,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::Path => "path",
            GraphFamily::Grid => "grid",
            GraphFamily::ErdosRenyi => "erdos-renyi",
            GraphFamily::RandomGeometric => "random-geometric",
            GraphFamily::RandomTree => "random-tree",
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown graph family '{s}'")))
    }
}

/// Ranges for drawn weights and attributes.
///
/// Weights are uniform on `(lo, hi]` and attributes uniform on `[lo, hi]`.
/// With `attribute_grid = Some(k)` attributes are rounded to multiples of
/// `1/k`, which keeps path sums exact in floating point for moderate sizes.
/// Random-geometric graphs use Euclidean edge lengths as weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distributions {
    pub weight_range: (f64, f64),
    pub attribute_range: (f64, f64),
    pub attribute_grid: Option<u32>,
}

impl Default for Distributions {
    fn default() -> Self {
        Distributions {
            weight_range: (0.0, 1.0),
            attribute_range: (0.0, 1.0),
            attribute_grid: None,
        }
    }
}

impl Distributions {
    /// Defaults with attributes on the `1/1024` grid.
    pub fn dyadic() -> Self {
        Distributions {
            attribute_grid: Some(1024),
            ..Distributions::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let (wl, wh) = self.weight_range;
        let (al, ah) = self.attribute_range;
        if !(wl.is_finite() && wh.is_finite() && 0.0 <= wl && wl < wh) {
            return Err(Error::InvalidParameter(format!(
                "weight range must satisfy 0 <= lo < hi, got ({wl}, {wh}]"
            )));
        }
        if !(al.is_finite() && ah.is_finite() && 0.0 <= al && al <= ah) {
            return Err(Error::InvalidParameter(format!(
                "attribute range must satisfy 0 <= lo <= hi, got [{al}, {ah}]"
            )));
        }
        if self.attribute_grid == Some(0) {
            return Err(Error::InvalidParameter("attribute grid must be positive".into()));
        }
        Ok(())
    }

    fn weight(&self, rng: &mut ChaCha20Rng) -> f64 {
        let (lo, hi) = self.weight_range;
        let u: f64 = rng.random();
        hi - (hi - lo) * u
    }

    fn attribute(&self, rng: &mut ChaCha20Rng) -> f64 {
        let (lo, hi) = self.attribute_range;
        let x = lo + (hi - lo) * rng.random::<f64>();
        match self.attribute_grid {
            Some(k) => {
                let k = k as f64;
                ((x * k).round() / k).clamp((lo * k).ceil() / k, (hi * k).floor() / k)
            }
            None => x,
        }
    }
}

pub fn generate_graph(family: GraphFamily, n: usize, seed: u64, dist: &Distributions) -> Result<Graph> {
    dist.validate()?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize, Option<f64>)> = match family {
        GraphFamily::Path => (1..n).map(|v| (v - 1, v, None)).collect(),
        GraphFamily::Grid => grid_pairs(n),
        GraphFamily::RandomTree => prufer_tree(n, &mut rng),
        GraphFamily::ErdosRenyi => erdos_renyi(n, &mut rng)?,
        GraphFamily::RandomGeometric => geometric(n, &mut rng)?,
    };
    let edges = pairs
        .into_iter()
        .map(|(u, v, length)| {
            let weight = length.unwrap_or_else(|| dist.weight(&mut rng));
            let attribute = dist.attribute(&mut rng);
            Edge::new(u, v, weight, attribute)
        })
        .collect();
    Graph::new(n, edges)
}

/// `r = floor(sqrt n)` rows of `ceil(n/r)` columns, first `n` cells in
/// row-major order.
fn grid_pairs(n: usize) -> Vec<(usize, usize, Option<f64>)> {
    let rows = ((n as f64).sqrt().floor() as usize).max(1);
    let cols = n.div_ceil(rows);
    let mut out = Vec::new();
    for v in 0..n {
        if (v + 1) % cols != 0 && v + 1 < n {
            out.push((v, v + 1, None));
        }
        if v + cols < n {
            out.push((v, v + cols, None));
        }
    }
    out
}

fn prufer_tree(n: usize, rng: &mut ChaCha20Rng) -> Vec<(usize, usize, Option<f64>)> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1, None)];
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut out = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = leaves.pop_first().expect("a Prufer sequence always leaves a leaf");
        out.push((leaf.min(c), leaf.max(c), None));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let a = leaves.pop_first().expect("two leaves remain");
    let b = leaves.pop_first().expect("two leaves remain");
    out.push((a, b, None));
    out
}

fn is_connected(n: usize, pairs: &[(usize, usize, Option<f64>)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parts = n;
    for &(u, v, _) in pairs {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts <= 1
}

/// `G(n, p)` with `p = min(1, 2 ln n / n)`, resampled until connected.
fn erdos_renyi(n: usize, rng: &mut ChaCha20Rng) -> Result<Vec<(usize, usize, Option<f64>)>> {
    let p = if n < 2 { 1.0 } else { (2.0 * (n as f64).ln() / n as f64).min(1.0) };
    for _ in 0..CONNECT_ATTEMPTS {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    pairs.push((u, v, None));
                }
            }
        }
        if is_connected(n, &pairs) {
            return Ok(pairs);
        }
    }
    Err(Error::ConnectivityNotReached {
        family: GraphFamily::ErdosRenyi.name().into(),
        n,
        attempts: CONNECT_ATTEMPTS,
    })
}

/// Uniform points in the unit square joined when closer than
/// `sqrt(2 ln n / (pi n))`, resampled until connected.
fn geometric(n: usize, rng: &mut ChaCha20Rng) -> Result<Vec<(usize, usize, Option<f64>)>> {
    let radius = if n < 2 {
        1.0
    } else {
        (2.0 * (n as f64).ln() / (std::f64::consts::PI * n as f64)).sqrt()
    };
    for _ in 0..CONNECT_ATTEMPTS {
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let d = (pts[u].0 - pts[v].0).hypot(pts[u].1 - pts[v].1);
                if d <= radius {
                    pairs.push((u, v, Some(d)));
                }
            }
        }
        if is_connected(n, &pairs) {
            return Ok(pairs);
        }
    }
    Err(Error::ConnectivityNotReached {
        family: GraphFamily::RandomGeometric.name().into(),
        n,
        attempts: CONNECT_ATTEMPTS,
    })
}
