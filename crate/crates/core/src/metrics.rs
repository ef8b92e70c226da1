//! Error measures between an exact vector and its approximation, and between
//! the rankings they induce.

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::hkpr::{check_eps, Distribution, VertexValues};
use crate::sweep::{rank_by_prob_per_degree, RankedList};

/// Prefix length used for the top-k intersection difference by default.
pub const DEFAULT_TOP_K: usize = 10;

fn check_dimension<A: VertexValues + ?Sized>(exact: &Distribution, approx: &A) -> Result<()> {
    if exact.len() != approx.dimension() {
        return Err(Error::DimensionMismatch {
            expected: exact.len(),
            actual: approx.dimension(),
        });
    }
    Ok(())
}

/// `(1/n) Σ_v |ρ(v) - ν(v)|`.
pub fn avg_l1_error<A: VertexValues + ?Sized>(exact: &Distribution, approx: &A) -> Result<f64> {
    check_dimension(exact, approx)?;
    if exact.is_empty() {
        return Ok(0.0);
    }
    let total: f64 = exact
        .values()
        .iter()
        .enumerate()
        .map(|(v, &rho)| (rho - approx.value(v)).abs())
        .sum();
    Ok(total / exact.len() as f64)
}

/// Total error in excess of an ε-approximation:
/// `Σ_{ν>0} max(|ρ-ν| - ερ, 0) + Σ_{ν=0} max(ρ - ε, 0)`.
pub fn eps_error<A: VertexValues + ?Sized>(exact: &Distribution, approx: &A, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    check_dimension(exact, approx)?;
    Ok(exact
        .values()
        .iter()
        .enumerate()
        .map(|(v, &rho)| {
            let nu = approx.value(v);
            if nu > 0.0 {
                ((rho - nu).abs() - eps * rho).max(0.0)
            } else {
                (rho - eps).max(0.0)
            }
        })
        .sum())
}

/// `(1/k) Σ_{i≤k} |A_i ⊕ B_i| / 2i` over the first `k` prefixes of the two
/// rankings, each padded to the full vertex set.
fn prefix_difference(a: &RankedList, b: &RankedList, k: usize) -> Result<f64> {
    if a.universe() != b.universe() {
        return Err(Error::DimensionMismatch {
            expected: a.universe(),
            actual: b.universe(),
        });
    }
    let n = a.universe();
    if k == 0 || k > n {
        return Err(invalid(format!("prefix length must lie in [1, {n}], got {k}")));
    }
    let (a, b) = (a.padded(), b.padded());
    let mut in_a = vec![false; n];
    let mut in_b = vec![false; n];
    let mut symmetric: i64 = 0;
    let mut total = 0.0;
    for (i, (&x, &y)) in a.order().iter().zip(b.order()).take(k).enumerate() {
        in_a[x] = true;
        symmetric += if in_b[x] { -1 } else { 1 };
        in_b[y] = true;
        symmetric += if in_a[y] { -1 } else { 1 };
        total += symmetric as f64 / (2 * (i + 1)) as f64;
    }
    Ok(total / k as f64)
}

/// Intersection difference `dist(A, B)` over all `n` prefixes.
pub fn intersection_difference(a: &RankedList, b: &RankedList) -> Result<f64> {
    prefix_difference(a, b, a.universe())
}

/// Intersection difference `dist_k(A, B)` over the first `k` prefixes.
pub fn topk_intersection_difference(a: &RankedList, b: &RankedList, k: usize) -> Result<f64> {
    prefix_difference(a, b, k)
}

/// All four measures for one exact/approximate pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub avg_l1: f64,
    pub eps_error: f64,
    pub intersection_difference: f64,
    pub topk_difference: f64,
    pub k_used: usize,
}

/// Compares `approx` against `exact`, ranking both by value per degree.
/// `k` is clamped to the number of vertices.
pub fn error_report<A: VertexValues + ?Sized>(
    graph: &Graph,
    exact: &Distribution,
    approx: &A,
    eps: f64,
    k: usize,
) -> Result<ErrorReport> {
    let ranked_exact = rank_by_prob_per_degree(graph, exact)?;
    let ranked_approx = rank_by_prob_per_degree(graph, approx)?;
    let k_used = k.min(graph.n());
    Ok(ErrorReport {
        avg_l1: avg_l1_error(exact, approx)?,
        eps_error: eps_error(exact, approx, eps)?,
        intersection_difference: intersection_difference(&ranked_exact, &ranked_approx)?,
        topk_difference: topk_intersection_difference(&ranked_exact, &ranked_approx, k_used)?,
        k_used,
    })
}
