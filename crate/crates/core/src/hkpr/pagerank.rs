use super::exact::{check_tolerance, walk_step};
use super::Distribution;
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Longest geometric series summed term by term. Smaller jump constants are
/// solved as a linear system instead.
pub const SERIES_TERM_LIMIT: u64 = 100_000;

/// Personalized PageRank `pr_{α,f} = α Σ_k (1-α)^k f P^k`.
///
/// The series is truncated once the remaining mass `(1-α)^{N+1}` drops below
/// `tol`. When that needs more than [`SERIES_TERM_LIMIT`] terms, which
/// happens for the tiny `α` used in cluster comparisons, the fixed point
/// `pr (I - (1-α)P) = α f` is solved instead by conjugate gradients on the
/// symmetric system `(D - (1-α)A) y = α f` with `pr = y D`.
pub fn pagerank_exact(graph: &Graph, f: &Distribution, alpha: f64, tol: f64) -> Result<Distribution> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    check_tolerance(tol)?;
    f.check_walk_start(graph)?;

    let beta = 1.0 - alpha;
    // Smallest N with β^{N+1} < tol.
    let terms = (tol.ln() / beta.ln()).floor();
    if terms <= SERIES_TERM_LIMIT as f64 {
        Ok(series(graph, f, alpha, terms as u64))
    } else {
        solve(graph, f, alpha, tol)
    }
}

fn series(graph: &Graph, f: &Distribution, alpha: f64, terms: u64) -> Distribution {
    let beta = 1.0 - alpha;
    let n = graph.n();
    let mut current = f.values().to_vec();
    let mut next = vec![0.0; n];
    let mut result: Vec<f64> = current.iter().map(|x| alpha * x).collect();
    let mut weight = alpha;
    for _ in 0..terms {
        walk_step(graph, &current, &mut next);
        std::mem::swap(&mut current, &mut next);
        weight *= beta;
        for (acc, x) in result.iter_mut().zip(&current) {
            *acc += weight * x;
        }
    }
    Distribution(result)
}

/// Preconditioned conjugate gradients with the degree diagonal as
/// preconditioner, started from the stationary vector.
fn solve(graph: &Graph, f: &Distribution, alpha: f64, tol: f64) -> Result<Distribution> {
    let beta = 1.0 - alpha;
    let n = graph.n();
    let degree: Vec<f64> = (0..n).map(|v| graph.degree(v) as f64).collect();
    let apply = |x: &[f64], out: &mut [f64]| {
        for v in 0..n {
            let adjacent: f64 = graph.neighbors(v).iter().map(|&w| x[w]).sum();
            out[v] = degree[v] * x[v] - beta * adjacent;
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    let start = 1.0 / graph.total_volume().max(1) as f64;
    let mut y: Vec<f64> = degree.iter().map(|&d| if d > 0.0 { start } else { 0.0 }).collect();
    let mut ay = vec![0.0; n];
    apply(&y, &mut ay);
    let mut residual: Vec<f64> = (0..n).map(|v| alpha * f.values()[v] - ay[v]).collect();
    let precondition = |r: &[f64]| -> Vec<f64> {
        r.iter()
            .zip(&degree)
            .map(|(x, &d)| if d > 0.0 { x / d } else { 0.0 })
            .collect()
    };
    let mut z = precondition(&residual);
    let mut direction = z.clone();
    let mut rz = dot(&residual, &z);
    let max_iterations = 20 * n + 10_000;
    let mut ad = vec![0.0; n];

    // With pr = yD the residual of the system is exactly the fixed-point
    // residual αf + (1-α) pr P - pr, so stop once it is below tol in L1.
    for _ in 0..max_iterations {
        if residual.iter().map(|x| x.abs()).sum::<f64>() <= tol {
            break;
        }
        apply(&direction, &mut ad);
        let curvature = dot(&direction, &ad);
        if curvature <= 0.0 {
            break;
        }
        let step = rz / curvature;
        for v in 0..n {
            y[v] += step * direction[v];
            residual[v] -= step * ad[v];
        }
        z = precondition(&residual);
        let rz_next = dot(&residual, &z);
        let momentum = rz_next / rz;
        rz = rz_next;
        for v in 0..n {
            direction[v] = z[v] + momentum * direction[v];
        }
    }

    let values = y
        .iter()
        .zip(&degree)
        .map(|(&yv, &d)| (yv * d).max(0.0))
        .collect();
    Distribution::new(values)
}
