use super::poisson::log_weight_step;
use super::Distribution;
use crate::error::{invalid, Result};
use crate::graph::Graph;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// One step of the walk: returns `v P` with `P_{uw} = 1/d_u` for `u ∼ w`.
pub(crate) fn walk_step(graph: &Graph, v: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|x| *x = 0.0);
    for (u, &mass) in v.iter().enumerate() {
        if mass == 0.0 {
            continue;
        }
        let neighbors = graph.neighbors(u);
        let share = mass / neighbors.len() as f64;
        for &w in neighbors {
            out[w] += share;
        }
    }
}

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("tolerance must lie in (0, 1), got {tol}")))
    }
}

/// Heat kernel pagerank `ρ_{t,f}` by the Taylor series, truncated at the
/// first `N` whose Poisson tail `Σ_{k>N} p_k` is certified below `tol`.
///
/// Past `k + 2 > t` the weights shrink at least geometrically with ratio
/// `t/(k+2)`, which bounds the tail by `p_{N+1} / (1 - t/(N+2))`. The
/// returned mass is therefore in `[1 - tol, 1]`.
pub fn hkpr_exact(graph: &Graph, f: &Distribution, t: f64, tol: f64) -> Result<Distribution> {
    f.check_walk_start(graph)?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(invalid(format!("t must be finite and nonnegative, got {t}")));
    }
    check_tolerance(tol)?;

    let n = graph.n();
    let mut current = f.values().to_vec();
    let mut next = vec![0.0; n];
    let mut result = vec![0.0; n];
    let mut log_p = -t;
    let mut k: u64 = 0;
    loop {
        let p = log_p.exp();
        if p > 0.0 {
            for (acc, x) in result.iter_mut().zip(&current) {
                *acc += p * x;
            }
        }
        let log_next = log_weight_step(log_p, t, k + 1);
        let horizon = (k + 2) as f64;
        if horizon > t && log_next.exp() / (1.0 - t / horizon) < tol {
            break;
        }
        walk_step(graph, &current, &mut next);
        std::mem::swap(&mut current, &mut next);
        log_p = log_next;
        k += 1;
    }
    Distribution::new(result)
}

/// `ρ_{t,u}`, the heat kernel pagerank seeded at a single vertex.
pub fn hkpr_exact_seed(graph: &Graph, u: usize, t: f64, tol: f64) -> Result<Distribution> {
    let f = Distribution::indicator(graph.n(), u)?;
    hkpr_exact(graph, &f, t, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::fixtures::*;
    use crate::graph::Graph;

    #[test]
    fn zero_temperature_is_identity() {
        let g = bridged_triangles();
        let f = Distribution::new(vec![0.1, 0.2, 0.3, 0.0, 0.4, 0.0]).unwrap();
        assert_eq!(hkpr_exact(&g, &f, 0.0, 1e-9).unwrap(), f);
    }

    #[test]
    fn closed_forms() {
        let rho = hkpr_exact_seed(&k2(), 0, 1.0, 1e-15).unwrap();
        let expected = (1.0 + (-2.0f64).exp()) / 2.0;
        assert!((rho.values()[0] - expected).abs() < 1e-12);
        assert!((rho.values()[0] - 0.5676676).abs() < 1e-7);

        let rho = hkpr_exact_seed(&k3(), 0, 2.0, 1e-15).unwrap();
        let expected = 1.0 / 3.0 + 2.0 / 3.0 * (-3.0f64).exp();
        assert!((rho.values()[0] - expected).abs() < 1e-12);
        assert!((rho.values()[0] - 0.366525).abs() < 1e-6);
    }

    #[test]
    fn mass_within_tolerance() {
        let g = bridged_triangles();
        for t in [0.5, 3.0, 40.0, 300.0] {
            for tol in [1e-3, 1e-9] {
                let s = hkpr_exact_seed(&g, 2, t, tol).unwrap().sum();
                assert!(s <= 1.0 + 1e-12 && s >= 1.0 - tol, "t={t} tol={tol} sum={s}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            hkpr_exact_seed(&g, 2, 1.0, 1e-9).unwrap_err(),
            Error::IsolatedVertex(2)
        );
        let f = Distribution::new(vec![0.3, 0.3, 0.0]).unwrap();
        assert!(matches!(hkpr_exact(&g, &f, 1.0, 1e-9), Err(Error::NotProbability(_))));
        assert!(hkpr_exact_seed(&g, 0, -1.0, 1e-9).is_err());
        assert!(hkpr_exact_seed(&g, 0, 1.0, 0.0).is_err());
    }
}
