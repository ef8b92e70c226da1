mod common;

use common::{connected_graph, local_set, rng};
use hkpr_core::graph::local_cheeger_brute;
use hkpr_core::hkpr::{degree_seed_dist, hkpr_exact};
use hkpr_core::spectral::{dirichlet_eigen, dirichlet_lambda};
use hkpr_core::sweep::sigma_local_cheeger;
use hkpr_core::{Graph, VertexSet};
use proptest::prelude::*;

/// Slack for the exact solver's truncation and rounding.
const NUMERIC: f64 = 1e-9;

fn instance(seed: u64, n: usize, p: f64) -> Option<(Graph, VertexSet)> {
    let mut r = rng(seed);
    let g = connected_graph(&mut r, n, p);
    let set = local_set(&mut r, &g, 10, g.total_volume() / 4)?;
    Some((g, set))
}

/// Minimum ratio over nonempty subsets by listing them as vertex sets.
fn local_cheeger_by_listing(g: &Graph, set: &VertexSet) -> f64 {
    let members = set.members();
    (1u32..1 << members.len())
        .filter_map(|mask| {
            let sub = VertexSet::new(
                g,
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v),
            )
            .unwrap();
            g.cheeger_ratio(&sub).ok()
        })
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn brute_force_matches_listing(seed in any::<u64>(), n in 4usize..25) {
        if let Some((g, set)) = instance(seed, n, 0.15) {
            let fast = local_cheeger_brute(&g, &set).unwrap();
            prop_assert_eq!(fast, local_cheeger_by_listing(&g, &set));
        }
    }

    #[test]
    fn heat_kernel_mass_obeys_cheeger_bounds(seed in any::<u64>(), n in 4usize..40, p in 0.03f64..0.3) {
        if let Some((g, set)) = instance(seed, n, p) {
            let phi_star = local_cheeger_brute(&g, &set).unwrap();
            let varsigma = set.volume();
            let f = degree_seed_dist(&g, &set).unwrap();
            for t in [1.0, 2.0, 5.0] {
                let rho = hkpr_exact(&g, &f, t, 1e-12).unwrap();
                let mass = rho.mass(&set);
                let phi_sigma = sigma_local_cheeger(&g, &rho, varsigma).unwrap();
                let lower = 0.5 * (-t * phi_star).exp();
                let upper = (varsigma as f64).sqrt() * (-t * phi_sigma * phi_sigma / 4.0).exp();
                prop_assert!(lower <= mass + NUMERIC, "t={} lower={} mass={}", t, lower, mass);
                prop_assert!(mass <= upper + NUMERIC, "t={} mass={} upper={}", t, mass, upper);
            }
        }
    }

    #[test]
    fn dirichlet_eigenvalue_obeys_local_cheeger(seed in any::<u64>(), n in 4usize..40, p in 0.03f64..0.3) {
        if let Some((g, set)) = instance(seed, n, p) {
            let phi_star = local_cheeger_brute(&g, &set).unwrap();
            let eig = dirichlet_eigen(&g, &set).unwrap();
            prop_assert!(eig.residual <= 1e-10);
            prop_assert!(eig.lambda >= -1e-12);
            prop_assert!(0.5 * phi_star * phi_star <= eig.lambda + 1e-12);
            prop_assert!(eig.lambda <= phi_star + 1e-12);
        }
    }

    #[test]
    fn dirichlet_eigenvalue_shrinks_as_set_grows(seed in any::<u64>(), n in 4usize..30) {
        let g = connected_graph(&mut rng(seed), n, 0.15);
        let mut previous = f64::INFINITY;
        for k in 1..=n {
            let lambda = dirichlet_lambda(&g, &VertexSet::new(&g, 0..k).unwrap()).unwrap();
            prop_assert!(lambda <= previous + 1e-12);
            previous = lambda;
        }
        prop_assert!(previous.abs() < 1e-12);
    }
}
