//! Per-pair answer tables shared by the release algorithms.

use crate::mechanisms::{NoiseSite, PrivacyBudget};

/// Values for unordered pairs `{u, v}`, `u != v`, stored as a strict upper
/// triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTable<T> {
    n: usize,
    data: Vec<T>,
}

#[inline]
fn row_offset(n: usize, u: usize) -> usize {
    u * (2 * n - u - 1) / 2
}

impl<T: Copy> PairTable<T> {
    pub fn filled(n: usize, value: T) -> Self {
        PairTable {
            n,
            data: vec![value; n * n.saturating_sub(1) / 2],
        }
    }

    /// `rows[u]` holds the values for `v = u+1 .. n` in order.
    pub fn from_rows(n: usize, rows: Vec<Vec<T>>) -> Self {
        assert_eq!(rows.len(), n, "one row per vertex");
        let mut data = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for (u, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), n - u - 1, "row {u} has the wrong length");
            data.extend(row);
        }
        PairTable { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    fn slot(&self, u: usize, v: usize) -> usize {
        assert!(u != v && u < self.n && v < self.n, "invalid pair ({u}, {v})");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        row_offset(self.n, a) + (b - a - 1)
    }

    /// Symmetric lookup. Panics when `u == v` or either is out of range.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> T {
        self.data[self.slot(u, v)]
    }

    pub fn set(&mut self, u: usize, v: usize, value: T) {
        let i = self.slot(u, v);
        self.data[i] = value;
    }

    /// `(u, v, value)` with `u < v`, in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .zip(self.data.iter().copied())
            .map(|((u, v), x)| (u, v, x))
    }

    pub fn values(&self) -> &[T] {
        &self.data
    }
}

/// Which release rule produced a pair's answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReleaseRule {
    /// Noisy edges to the first hub, hub-to-hub noisy segments, noisy edges
    /// from the last hub.
    HubSegments,
    /// An endpoint is a hub; answered from that hub's private tree.
    HubEndpoint,
    /// A hub lies on the path; answered from two estimates in its tree.
    HubOnPath,
    /// Sum of per-edge noisy attributes along the path.
    EdgeSum,
}

/// Anything that answers one real value per unordered vertex pair.
pub trait PairValues {
    fn n(&self) -> usize;
    /// Answer for `{u, v}`; 0 when `u == v`.
    fn value(&self, u: usize, v: usize) -> f64;
}

impl PairValues for PairTable<f64> {
    fn n(&self) -> usize {
        self.n
    }

    fn value(&self, u: usize, v: usize) -> f64 {
        if u == v {
            0.0
        } else {
            self.get(u, v)
        }
    }
}

/// Noisy counting answers for all pairs.
#[derive(Debug, Clone)]
pub struct CountRelease {
    pub answers: PairTable<f64>,
    pub rules: PairTable<ReleaseRule>,
    pub budget: PrivacyBudget,
    pub noise_on: bool,
    pub noise_sites: Vec<NoiseSite>,
}

impl CountRelease {
    pub fn rule(&self, u: usize, v: usize) -> Option<ReleaseRule> {
        (u != v).then(|| self.rules.get(u, v))
    }

    pub fn rule_counts(&self) -> Vec<(ReleaseRule, usize)> {
        let mut out: Vec<(ReleaseRule, usize)> = Vec::new();
        for &r in self.rules.values() {
            match out.iter_mut().find(|(k, _)| *k == r) {
                Some((_, c)) => *c += 1,
                None => out.push((r, 1)),
            }
        }
        out
    }
}

impl PairValues for CountRelease {
    fn n(&self) -> usize {
        self.answers.n()
    }

    fn value(&self, u: usize, v: usize) -> f64 {
        self.answers.value(u, v)
    }
}

/// Largest and mean absolute difference over all pairs.
pub fn pair_errors(released: &impl PairValues, exact: &impl PairValues) -> (f64, f64) {
    let n = released.n();
    assert_eq!(n, exact.n(), "tables cover different vertex counts");
    let mut max = 0.0f64;
    let mut sum = 0.0;
    let mut count = 0usize;
    for u in 0..n {
        for v in u + 1..n {
            let err = (released.value(u, v) - exact.value(u, v)).abs();
            max = max.max(err);
            sum += err;
            count += 1;
        }
    }
    (max, if count == 0 { 0.0 } else { sum / count as f64 })
}
