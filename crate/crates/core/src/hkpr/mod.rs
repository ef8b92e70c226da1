//! Heat kernel pagerank `ρ_{t,f} = e^{-t} Σ_k (t^k/k!) f P^k`, computed exactly
//! by a truncated series or approximately by sampling Poisson-length random
//! walks, plus personalized PageRank for comparison.

mod approx;
mod exact;
mod pagerank;
pub mod poisson;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};

pub use approx::{hkpr_approx_seed, is_eps_approximate, random_walk, EpsApproxCheck, Violation};
pub use exact::{hkpr_exact, hkpr_exact_seed, DEFAULT_TOLERANCE};
pub use pagerank::{pagerank_exact, SERIES_TERM_LIMIT};
pub use poisson::{poisson_weights, sample_walk_length, PoissonSampler};

/// Slack allowed on the total mass of an input probability vector.
pub const PROBABILITY_SLACK: f64 = 1e-9;

/// Constant in the default walk cap `K = ⌈c·ln(1/ε)/ln ln(1/ε)⌉`.
pub const DEFAULT_WALK_CAP_CONSTANT: f64 = 4.0;

/// Read access shared by dense and sampled vectors over the vertices.
pub trait VertexValues {
    fn dimension(&self) -> usize;

    fn value(&self, v: usize) -> f64;

    /// Vertices with a nonzero value, ascending.
    fn support(&self) -> Vec<usize>;

    /// Orders `a` and `b` by value per degree, ascending.
    fn compare_per_degree(&self, a: usize, degree_a: usize, b: usize, degree_b: usize) -> Ordering {
        let ra = self.value(a) / degree_a as f64;
        let rb = self.value(b) / degree_b as f64;
        ra.total_cmp(&rb)
    }
}

/// Dense nonnegative vector over the vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::NotProbability(format!("entry {bad} is negative or not finite")));
        }
        Ok(Self(values))
    }

    /// `χ_u`.
    pub fn indicator(n: usize, u: usize) -> Result<Self> {
        if u >= n {
            return Err(Error::VertexOutOfRange { vertex: u, n });
        }
        let mut values = vec![0.0; n];
        values[u] = 1.0;
        Ok(Self(values))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    /// `d_v / vol(G)`, the stationary distribution of the walk.
    pub fn stationary(graph: &Graph) -> Self {
        let total = graph.total_volume() as f64;
        Self(
            (0..graph.n())
                .map(|v| graph.degree(v) as f64 / total)
                .collect(),
        )
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Total value on the members of `set`.
    pub fn mass(&self, set: &VertexSet) -> f64 {
        set.members().iter().map(|&v| self.0[v]).sum()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|x| x * factor).collect())
    }

    pub fn l1_distance(&self, other: &Distribution) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).sum()
    }

    /// Checks that this is a probability vector on `graph` that a walk can
    /// start from.
    pub(crate) fn check_walk_start(&self, graph: &Graph) -> Result<()> {
        if self.len() != graph.n() {
            return Err(Error::DimensionMismatch {
                expected: graph.n(),
                actual: self.len(),
            });
        }
        let total = self.sum();
        if (total - 1.0).abs() > PROBABILITY_SLACK {
            return Err(Error::NotProbability(format!("entries sum to {total}")));
        }
        if let Some(v) = (0..self.len()).find(|&v| self.0[v] > 0.0 && graph.degree(v) == 0) {
            return Err(Error::IsolatedVertex(v));
        }
        Ok(())
    }
}

impl VertexValues for Distribution {
    fn dimension(&self) -> usize {
        self.0.len()
    }

    fn value(&self, v: usize) -> f64 {
        self.0[v]
    }

    fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v] > 0.0).collect()
    }
}

/// `f_S(u) = d_u / vol(S)` on `S`, zero elsewhere.
pub fn degree_seed_dist(graph: &Graph, set: &VertexSet) -> Result<Distribution> {
    let volume = graph.volume(set)?;
    if volume == 0 {
        return Err(Error::EmptySet);
    }
    let mut values = vec![0.0; graph.n()];
    for &v in set.members() {
        values[v] = graph.degree(v) as f64 / volume as f64;
    }
    Ok(Distribution(values))
}

/// Sparse endpoint counts of `r` sampled walks; `value(v) = counts(v) / r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxDistribution {
    n: usize,
    samples: u64,
    counts: BTreeMap<usize, u64>,
}

impl ApproxDistribution {
    pub fn from_counts(n: usize, counts: BTreeMap<usize, u64>) -> Result<Self> {
        if let Some(&v) = counts.keys().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let counts: BTreeMap<usize, u64> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let samples = counts.values().sum();
        if samples == 0 {
            return Err(invalid("approximate distribution needs at least one sample"));
        }
        Ok(Self { n, samples, counts })
    }

    /// Sample count `r`.
    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn count(&self, v: usize) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    pub fn to_dense(&self) -> Distribution {
        Distribution((0..self.n).map(|v| self.value(v)).collect())
    }

    /// Componentwise mean of several sampled vectors over the same vertices.
    pub fn average(parts: &[ApproxDistribution]) -> Result<Distribution> {
        let first = parts.first().ok_or_else(|| invalid("nothing to average"))?;
        let mut values = vec![0.0; first.n];
        for part in parts {
            if part.n != first.n {
                return Err(Error::DimensionMismatch {
                    expected: first.n,
                    actual: part.n,
                });
            }
            for (&v, &c) in &part.counts {
                values[v] += c as f64 / part.samples as f64;
            }
        }
        let k = parts.len() as f64;
        values.iter_mut().for_each(|x| *x /= k);
        Ok(Distribution(values))
    }
}

impl VertexValues for ApproxDistribution {
    fn dimension(&self) -> usize {
        self.n
    }

    fn value(&self, v: usize) -> f64 {
        self.count(v) as f64 / self.samples as f64
    }

    fn support(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }

    // Exact integer comparison: c_a/(r·d_a) vs c_b/(r·d_b).
    fn compare_per_degree(&self, a: usize, degree_a: usize, b: usize, degree_b: usize) -> Ordering {
        let lhs = u128::from(self.count(a)) * degree_b as u128;
        let rhs = u128::from(self.count(b)) * degree_a as u128;
        lhs.cmp(&rhs)
    }
}

/// Parameters of the sampling algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HkprParams {
    /// Temperature, the mean walk length.
    pub t: f64,
    pub eps: f64,
    /// Number of sampled walks.
    pub samples: u64,
    /// Walks are shortened to at most this many steps.
    pub walk_cap: u64,
    pub seed: u64,
}

impl HkprParams {
    /// Parameters with the default sample count and walk cap for `n` vertices.
    pub fn new(n: usize, t: f64, eps: f64, seed: u64) -> Result<Self> {
        check_eps(eps)?;
        if !(t.is_finite() && t >= 0.0) {
            return Err(invalid(format!("t must be finite and nonnegative, got {t}")));
        }
        Ok(Self {
            t,
            eps,
            samples: default_samples(n, eps),
            walk_cap: default_walk_cap(eps, DEFAULT_WALK_CAP_CONSTANT),
            seed,
        })
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_walk_cap(mut self, walk_cap: u64) -> Self {
        self.walk_cap = walk_cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_eps(self.eps)?;
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(invalid(format!("t must be finite and nonnegative, got {}", self.t)));
        }
        if self.samples == 0 {
            return Err(invalid("sample count must be at least 1"));
        }
        Ok(())
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("eps must lie in (0, 1), got {eps}")))
    }
}

/// `r = ⌈(16/ε³)·ln n⌉`, at least 1.
pub fn default_samples(n: usize, eps: f64) -> u64 {
    let r = (16.0 / eps.powi(3) * (n.max(1) as f64).ln()).ceil();
    (r as u64).max(1)
}

/// `K = ⌈c·ln(1/ε) / ln ln(1/ε)⌉`, at least 1.
///
/// For `ε ≥ 1/e` the double logarithm is not positive and the cap falls back
/// to `⌈c·ln(1/ε)⌉`.
pub fn default_walk_cap(eps: f64, c: f64) -> u64 {
    let log_inv = (1.0 / eps).ln();
    let log_log = log_inv.ln();
    let k = if log_log > 0.0 {
        c * log_inv / log_log
    } else {
        c * log_inv
    };
    (k.ceil() as u64).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn degree_seed_distribution() {
        let k3 = k3();
        let single = degree_seed_dist(&k3, &VertexSet::new(&k3, [1]).unwrap()).unwrap();
        assert_eq!(single, Distribution::indicator(3, 1).unwrap());
        let all = degree_seed_dist(&k3, &VertexSet::all(&k3)).unwrap();
        assert!(all.values().iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-15));
        let p = path4();
        let f = degree_seed_dist(&p, &VertexSet::new(&p, [0, 1]).unwrap()).unwrap();
        let expected = [1.0 / 3.0, 2.0 / 3.0, 0.0, 0.0];
        assert!(f.values().iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-15));
        assert_eq!(
            degree_seed_dist(&p, &VertexSet::new(&p, []).unwrap()).unwrap_err(),
            Error::EmptySet
        );
    }

    #[test]
    fn default_parameters() {
        // 16/0.001 · ln 100
        assert_eq!(default_samples(100, 0.1), 73_683);
        assert_eq!(default_samples(1, 0.1), 1);
        // 4·ln 10 / ln ln 10 ≈ 11.04
        assert_eq!(default_walk_cap(0.1, 4.0), 12);
        assert_eq!(default_walk_cap(0.5, 4.0), 3);
        assert!(HkprParams::new(10, 1.0, 1.0, 0).is_err());
        assert!(HkprParams::new(10, -1.0, 0.1, 0).is_err());
    }

    #[test]
    fn approx_counts() {
        let counts = BTreeMap::from([(0, 3), (2, 1), (1, 0)]);
        let a = ApproxDistribution::from_counts(3, counts).unwrap();
        assert_eq!(a.samples(), 4);
        assert_eq!(a.support(), vec![0, 2]);
        assert_eq!(a.value(0), 0.75);
        assert!(ApproxDistribution::from_counts(2, BTreeMap::from([(2, 1)])).is_err());
        assert!(ApproxDistribution::from_counts(2, BTreeMap::new()).is_err());
    }

    #[test]
    fn walk_start_checks() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            Distribution::indicator(3, 2).unwrap().check_walk_start(&g),
            Err(Error::IsolatedVertex(2))
        );
        assert!(Distribution::new(vec![0.5, 0.4, 0.0]).unwrap().check_walk_start(&g).is_err());
        assert!(Distribution::new(vec![-0.1, 1.1]).is_err());
    }
}
