#![allow(dead_code)]

use hkpr_core::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.push((order[i], parent));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Grows a connected set from a random vertex, keeping `vol(S) ≤ max_volume`.
pub fn local_set(rng: &mut ChaCha8Rng, g: &Graph, max_size: usize, max_volume: u64) -> Option<VertexSet> {
    let target = rng.random_range(1..=max_size);
    let start = rng.random_range(0..g.n());
    if g.degree(start) as u64 > max_volume {
        return None;
    }
    let mut members = vec![start];
    let mut volume = g.degree(start) as u64;
    while members.len() < target {
        let mut frontier: Vec<usize> = members
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|w| !members.contains(w) && volume + g.degree(*w) as u64 <= max_volume)
            .collect();
        frontier.sort_unstable();
        frontier.dedup();
        if frontier.is_empty() {
            break;
        }
        let next = frontier[rng.random_range(0..frontier.len())];
        volume += g.degree(next) as u64;
        members.push(next);
    }
    Some(VertexSet::new(g, members).unwrap())
}
