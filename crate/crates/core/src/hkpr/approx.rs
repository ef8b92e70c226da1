use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use super::poisson::PoissonSampler;
use super::{check_eps, ApproxDistribution, Distribution, HkprParams, VertexValues};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::substream;

/// Endpoint of a `steps`-step simple random walk from `u`.
pub fn random_walk<R: Rng + ?Sized>(graph: &Graph, u: usize, steps: u64, rng: &mut R) -> Result<usize> {
    graph.check_vertex(u)?;
    let mut at = u;
    for _ in 0..steps {
        let neighbors = graph.neighbors(at);
        if neighbors.is_empty() {
            return Err(Error::IsolatedVertex(at));
        }
        at = neighbors[rng.random_range(0..neighbors.len())];
    }
    Ok(at)
}

// Caller guarantees d_u ≥ 1, so every vertex reached has a neighbor.
fn walk_unchecked<R: Rng + ?Sized>(graph: &Graph, u: usize, steps: u64, rng: &mut R) -> usize {
    let mut at = u;
    for _ in 0..steps {
        let neighbors = graph.neighbors(at);
        at = neighbors[rng.random_range(0..neighbors.len())];
    }
    at
}

/// Monte-Carlo estimate `ρ̂_{t,u}` of the heat kernel pagerank seeded at `u`.
///
/// Each of the `params.samples` iterations draws `k ~ Poisson(t)`, walks
/// `min(k, walk_cap)` steps from `u` and counts the endpoint. Iteration `i`
/// uses its own random stream derived from `(params.seed, i)`, so the counts
/// do not depend on how iterations are spread over threads.
pub fn hkpr_approx_seed(graph: &Graph, u: usize, params: &HkprParams) -> Result<ApproxDistribution> {
    params.validate()?;
    graph.check_vertex(u)?;
    if graph.degree(u) == 0 {
        return Err(Error::IsolatedVertex(u));
    }
    let sampler = PoissonSampler::new(params.t)?;
    let cap = params.walk_cap;

    let counts = (0..params.samples)
        .into_par_iter()
        .fold(BTreeMap::new, |mut counts: BTreeMap<usize, u64>, i| {
            let mut rng = substream(params.seed, i);
            let steps = sampler.sample(&mut rng).min(cap);
            *counts.entry(walk_unchecked(graph, u, steps, &mut rng)).or_insert(0) += 1;
            counts
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (v, c) in b {
                *a.entry(v).or_insert(0) += c;
            }
            a
        });
    ApproxDistribution::from_counts(graph.n(), counts)
}

/// A vertex where the approximation bounds fail.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub vertex: usize,
    pub exact: f64,
    pub approx: f64,
    /// Distance past the violated bound, always positive.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsApproxCheck {
    pub violations: Vec<Violation>,
}

impl EpsApproxCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks whether `approx` is an ε-approximate vector of `exact`.
///
/// On the support of `approx` each value must satisfy
/// `(1-ε)ρ(v) - ε ≤ ν(v) ≤ (1+ε)ρ(v)`; off the support `ρ(v) ≤ ε`. All
/// bounds are inclusive.
pub fn is_eps_approximate<A: VertexValues + ?Sized>(
    exact: &Distribution,
    approx: &A,
    eps: f64,
) -> Result<EpsApproxCheck> {
    check_eps(eps)?;
    if exact.len() != approx.dimension() {
        return Err(Error::DimensionMismatch {
            expected: exact.len(),
            actual: approx.dimension(),
        });
    }
    let mut violations = Vec::new();
    for (v, &rho) in exact.values().iter().enumerate() {
        let nu = approx.value(v);
        let excess = if nu > 0.0 {
            let lower = (1.0 - eps) * rho - eps;
            let upper = (1.0 + eps) * rho;
            (lower - nu).max(nu - upper)
        } else {
            rho - eps
        };
        if excess > 0.0 {
            violations.push(Violation {
                vertex: v,
                exact: rho,
                approx: nu,
                excess,
            });
        }
    }
    Ok(EpsApproxCheck { violations })
}
