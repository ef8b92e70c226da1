//! Seeded random graph generators: Watts–Strogatz small worlds,
//! Barabási–Albert preferential attachment and its Holme–Kim triangle-closing
//! variant.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::rng::{substream, StreamRng};

/// Connectivity attempts before the Watts–Strogatz generator gives up.
pub const CONNECT_ATTEMPTS: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub n: usize,
    /// Ring width for Watts–Strogatz, edges per arrival otherwise.
    pub d: usize,
    /// Rewiring or triangle-closing probability.
    pub p: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, d: usize, p: f64, seed: u64) -> Result<Self> {
        let params = Self { n, d, p, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.n <= self.d {
            return Err(invalid(format!("need n > d ≥ 1, got n={} d={}", self.n, self.d)));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(invalid(format!("p must lie in [0, 1], got {}", self.p)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    WattsStrogatz,
    BarabasiAlbert,
    PowerlawCluster,
}

impl Model {
    pub fn generate(self, params: &GenParams) -> Result<Graph> {
        match self {
            Model::WattsStrogatz => watts_strogatz_connected(params),
            Model::BarabasiAlbert => barabasi_albert(params),
            Model::PowerlawCluster => powerlaw_cluster(params),
        }
    }
}

/// Ring lattice with `⌊d/2⌋` neighbors per side whose edges are each rewired
/// with probability `p`, regenerated until connected.
pub fn watts_strogatz_connected(params: &GenParams) -> Result<Graph> {
    params.validate()?;
    if params.d / 2 == 0 {
        return Err(invalid("d must be at least 2 for a ring lattice"));
    }
    for attempt in 0..CONNECT_ATTEMPTS {
        let mut rng = substream(params.seed, attempt);
        let graph = watts_strogatz(params, &mut rng)?;
        if graph.is_connected() {
            return Ok(graph);
        }
    }
    Err(Error::NotConnected(CONNECT_ATTEMPTS as usize))
}

fn watts_strogatz(params: &GenParams, rng: &mut StreamRng) -> Result<Graph> {
    let n = params.n;
    let half = params.d / 2;
    let mut adjacency: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=half {
            let v = (u + j) % n;
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
    }
    for j in 1..=half {
        for u in 0..n {
            let v = (u + j) % n;
            if !adjacency[u].contains(&v) || !rng.random_bool(params.p) {
                continue;
            }
            if adjacency[u].len() + 1 >= n {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adjacency[u].contains(&w) {
                    break w;
                }
            };
            adjacency[u].remove(&v);
            adjacency[v].remove(&u);
            adjacency[u].insert(w);
            adjacency[w].insert(u);
        }
    }
    let edges = adjacency
        .iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.range(u + 1..).map(move |&v| (u, v)));
    Graph::from_edges(n, edges)
}

/// Preferential attachment: `d` isolated seed vertices, then each arrival
/// attaches `d` distinct edges with endpoints drawn proportionally to degree.
pub fn barabasi_albert(params: &GenParams) -> Result<Graph> {
    params.validate()?;
    grow(params, 0.0)
}

/// Preferential attachment where, after each edge to `w`, the next edge goes
/// to a random neighbor of `w` with probability `p` when one is available.
pub fn powerlaw_cluster(params: &GenParams) -> Result<Graph> {
    params.validate()?;
    grow(params, params.p)
}

fn grow(params: &GenParams, triangle_p: f64) -> Result<Graph> {
    let (n, d) = (params.n, params.d);
    let mut rng = substream(params.seed, 0);
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    // Every edge endpoint once, so a uniform draw is degree-proportional.
    let mut urn: Vec<usize> = Vec::with_capacity(2 * d * (n - d));
    let mut edges = Vec::with_capacity(d * (n - d));

    for source in d..n {
        let mut chosen: Vec<usize> = Vec::with_capacity(d);
        if urn.is_empty() {
            chosen.extend(0..d);
        } else {
            let mut last: Option<usize> = None;
            while chosen.len() < d {
                let closing = match last {
                    Some(w) if triangle_p > 0.0 && rng.random_bool(triangle_p) => {
                        let open: Vec<usize> = adjacency[w]
                            .iter()
                            .copied()
                            .filter(|x| !chosen.contains(x))
                            .collect();
                        (!open.is_empty()).then(|| open[rng.random_range(0..open.len())])
                    }
                    _ => None,
                };
                let target = match closing {
                    Some(x) => x,
                    None => loop {
                        let x = urn[rng.random_range(0..urn.len())];
                        if !chosen.contains(&x) {
                            break x;
                        }
                    },
                };
                chosen.push(target);
                last = Some(target);
            }
        }
        for &target in &chosen {
            adjacency[target].push(source);
            adjacency[source].push(target);
            urn.push(target);
            urn.push(source);
            edges.push((source, target));
        }
    }
    Graph::from_edges(n, edges)
}
