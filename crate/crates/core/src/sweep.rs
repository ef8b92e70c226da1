//! Sweeps over probability-per-degree orderings and the local clustering
//! algorithms built on them.
//!
//! A sweep ranks the support of a vector `p` by `p(v)/d_v` and evaluates the
//! cut of every prefix (segment) of that ranking. The boundary of each segment
//! is maintained incrementally: adding `v` changes it by
//! `d_v - 2·|N(v) ∩ segment|`.

use crate::error::{invalid, Error, Result};
use crate::graph::{ratio, Graph, VertexSet};
use crate::hkpr::{
    check_eps, hkpr_approx_seed, hkpr_exact_seed, pagerank_exact, ApproxDistribution, Distribution,
    HkprParams, VertexValues, DEFAULT_TOLERANCE,
};

/// Vertices ordered by value per degree, descending, ties by ascending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedList {
    order: Vec<usize>,
    universe: usize,
}

impl RankedList {
    /// A ranking given explicitly; ids must be distinct and below `universe`.
    pub fn from_order(universe: usize, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; universe];
        for &v in &order {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(invalid(format!("vertex {v} ranked twice")));
            }
        }
        Ok(Self { order, universe })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Number of vertices in the graph the ranking is over.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Extends the ranking to every vertex, appending the unranked ones in
    /// ascending id order.
    pub fn padded(&self) -> RankedList {
        let mut ranked = vec![false; self.universe];
        for &v in &self.order {
            ranked[v] = true;
        }
        let mut order = self.order.clone();
        order.extend((0..self.universe).filter(|&v| !ranked[v]));
        RankedList {
            order,
            universe: self.universe,
        }
    }
}

/// Ranks the support of `p` by `p(v)/d_v`.
pub fn rank_by_prob_per_degree<V: VertexValues + ?Sized>(graph: &Graph, p: &V) -> Result<RankedList> {
    if p.dimension() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            actual: p.dimension(),
        });
    }
    let mut order = p.support();
    if let Some(&v) = order.iter().find(|&&v| graph.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    order.sort_by(|&a, &b| {
        p.compare_per_degree(b, graph.degree(b), a, graph.degree(a))
            .then(a.cmp(&b))
    });
    Ok(RankedList {
        order,
        universe: graph.n(),
    })
}

/// The cut induced by the first `size` vertices of a ranking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub size: usize,
    pub volume: u64,
    pub boundary: u64,
    pub ratio: f64,
}

/// Incremental segment state shared by all sweep flavours.
struct Segment<'g> {
    graph: &'g Graph,
    inside: Vec<bool>,
    size: usize,
    volume: u64,
    boundary: u64,
}

impl<'g> Segment<'g> {
    fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            inside: vec![false; graph.n()],
            size: 0,
            volume: 0,
            boundary: 0,
        }
    }

    fn push(&mut self, v: usize) -> Result<()> {
        let degree = self.graph.degree(v);
        if degree == 0 {
            return Err(Error::IsolatedVertex(v));
        }
        let internal = self
            .graph
            .neighbors(v)
            .iter()
            .filter(|&&w| self.inside[w])
            .count() as u64;
        self.inside[v] = true;
        self.size += 1;
        self.volume += degree as u64;
        self.boundary = self.boundary + degree as u64 - 2 * internal;
        Ok(())
    }

    fn point(&self) -> Option<SweepPoint> {
        ratio(self.boundary, self.volume, self.graph.total_volume()).map(|r| SweepPoint {
            size: self.size,
            volume: self.volume,
            boundary: self.boundary,
            ratio: r,
        })
    }
}

/// Sweep points for every segment with volume at most `max_volume`.
///
/// Stops at the first segment exceeding `max_volume`, or one whose
/// complement has zero volume.
pub fn sweep_cuts(graph: &Graph, ranked: &RankedList, max_volume: u64) -> Result<Vec<SweepPoint>> {
    if ranked.is_empty() {
        return Err(Error::EmptySet);
    }
    if ranked.universe() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            actual: ranked.universe(),
        });
    }
    let mut segment = Segment::new(graph);
    let mut points = Vec::new();
    for &v in ranked.order() {
        segment.push(v)?;
        if segment.volume > max_volume {
            break;
        }
        match segment.point() {
            Some(point) => points.push(point),
            None => break,
        }
    }
    Ok(points)
}

/// `Φ_ς(p)`: the smallest ratio over segments of volume at most `2ς`, or
/// `+∞` when no segment qualifies.
pub fn sigma_local_cheeger<V: VertexValues + ?Sized>(graph: &Graph, p: &V, target_volume: u64) -> Result<f64> {
    if target_volume == 0 {
        return Err(invalid("target volume must be at least 1"));
    }
    let ranked = rank_by_prob_per_degree(graph, p)?;
    let points = sweep_cuts(graph, &ranked, 2 * target_volume)?;
    Ok(points.iter().map(|p| p.ratio).fold(f64::INFINITY, f64::min))
}

/// `t = φ⁻¹ ln(2√ς/(1-ε) + 2εs)`.
pub fn compute_t(target_ratio: f64, target_volume: f64, target_size: f64, eps: f64) -> Result<f64> {
    if target_ratio.is_nan() || target_ratio <= 0.0 {
        return Err(invalid(format!("target ratio must be positive, got {target_ratio}")));
    }
    if !(target_volume > 0.0 && target_size > 0.0) {
        return Err(invalid("target volume and size must be positive"));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(invalid(format!("eps must lie in [0, 1), got {eps}")));
    }
    let inner = 2.0 * target_volume.sqrt() / (1.0 - eps) + 2.0 * eps * target_size;
    Ok(inner.ln() / target_ratio)
}

/// `α = φ² / (255 ln(100√m))`, the PageRank jump constant of the comparison.
pub fn compute_alpha(target_ratio: f64, edges: usize) -> Result<f64> {
    if target_ratio.is_nan() || target_ratio <= 0.0 {
        return Err(invalid(format!("target ratio must be positive, got {target_ratio}")));
    }
    if edges == 0 {
        return Err(invalid("edge count must be at least 1"));
    }
    Ok(target_ratio * target_ratio / (255.0 * (100.0 * (edges as f64).sqrt()).ln()))
}

/// Targets for the local clustering algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterParams {
    /// `s`, expected number of vertices in the cluster.
    pub target_size: usize,
    /// `ς`, expected volume of the cluster.
    pub target_volume: u64,
    /// `φ`, Cheeger ratio of the cluster being looked for.
    pub target_ratio: f64,
    pub eps: f64,
}

impl ClusterParams {
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        check_eps(self.eps)?;
        if !(self.target_ratio > 0.0 && self.target_ratio < 1.0) {
            return Err(invalid(format!(
                "target ratio must lie in (0, 1), got {}",
                self.target_ratio
            )));
        }
        if self.target_size == 0 {
            return Err(invalid("target size must be at least 1"));
        }
        if self.target_volume == 0 || 4 * self.target_volume > graph.total_volume() {
            return Err(invalid(format!(
                "target volume {} must lie in [1, vol(G)/4 = {}]",
                self.target_volume,
                graph.total_volume() as f64 / 4.0
            )));
        }
        Ok(())
    }

    /// Temperature for the sampled vector.
    pub fn temperature(&self) -> Result<f64> {
        compute_t(
            self.target_ratio,
            self.target_volume as f64,
            self.target_size as f64,
            self.eps,
        )
    }

    /// `√(8φ)`, the ratio a found cut is certified against.
    pub fn ratio_bound(&self) -> f64 {
        (8.0 * self.target_ratio).sqrt()
    }
}

/// How far a clustering sweep looks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepMode {
    /// Stop once a segment exceeds `2ς`; return the first segment with
    /// volume in `[ς/2, 2ς]` and ratio at most `√(8φ)`.
    #[default]
    Window,
    /// Return the minimum-ratio segment of volume at most `vol(G)/2`.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Found,
    NoCutFound,
}

/// A segment of a sweep together with its members.
#[derive(Debug, Clone, PartialEq)]
pub struct Cut {
    pub point: SweepPoint,
    pub members: Vec<usize>,
}

impl Cut {
    pub fn vertex_set(&self, graph: &Graph) -> Result<VertexSet> {
        VertexSet::new(graph, self.members.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterResult {
    pub verdict: Verdict,
    /// The returned segment. In [`SweepMode::Half`] this is the best segment
    /// even when it misses the ratio bound.
    pub cut: Option<Cut>,
    pub mode: SweepMode,
    pub hkpr: HkprParams,
    pub params: ClusterParams,
}

/// Options for [`cluster_hkpr_with`]; unset fields take the defaults for
/// the graph size and `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClusterOptions {
    pub seed: u64,
    pub samples: Option<u64>,
    pub walk_cap: Option<u64>,
    pub mode: SweepMode,
}

impl ClusterOptions {
    pub fn seeded(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn hkpr_params(&self, graph: &Graph, t: f64, eps: f64) -> Result<HkprParams> {
        let mut params = HkprParams::new(graph.n(), t, eps, self.seed)?;
        if let Some(samples) = self.samples {
            params = params.with_samples(samples);
        }
        if let Some(cap) = self.walk_cap {
            params = params.with_walk_cap(cap);
        }
        Ok(params)
    }
}

/// Local clustering from seed `u` with default sampling parameters and the
/// windowed sweep.
pub fn cluster_hkpr(graph: &Graph, u: usize, params: &ClusterParams, seed: u64) -> Result<ClusterResult> {
    cluster_hkpr_with(graph, u, params, &ClusterOptions::seeded(seed))
}

/// Samples `ρ̂_{t,u}` with `t` from [`compute_t`] and sweeps over it.
pub fn cluster_hkpr_with(
    graph: &Graph,
    u: usize,
    params: &ClusterParams,
    options: &ClusterOptions,
) -> Result<ClusterResult> {
    params.validate(graph)?;
    graph.check_vertex(u)?;
    if graph.degree(u) == 0 {
        return Err(Error::IsolatedVertex(u));
    }
    let hkpr = options.hkpr_params(graph, params.temperature()?, params.eps)?;
    let approx = hkpr_approx_seed(graph, u, &hkpr)?;
    let ranked = rank_by_prob_per_degree(graph, &approx)?;
    let bound = params.ratio_bound();

    let (verdict, cut) = match options.mode {
        SweepMode::Window => match window_sweep(graph, &ranked, params)? {
            Some(cut) => (Verdict::Found, Some(cut)),
            None => (Verdict::NoCutFound, None),
        },
        SweepMode::Half => {
            let cut = best_cut(graph, &ranked)?;
            let verdict = if cut.point.ratio <= bound {
                Verdict::Found
            } else {
                Verdict::NoCutFound
            };
            (verdict, Some(cut))
        }
    };

    if let (Verdict::Found, Some(cut)) = (verdict, &cut) {
        assert!(cut.point.ratio <= bound, "found cut violates the ratio bound");
        if options.mode == SweepMode::Window {
            let volume = cut.point.volume as f64;
            let target = params.target_volume as f64;
            assert!(
                volume >= target / 2.0 && volume <= 2.0 * target,
                "found cut violates the volume window"
            );
        }
    }
    Ok(ClusterResult {
        verdict,
        cut,
        mode: options.mode,
        hkpr,
        params: *params,
    })
}

fn window_sweep(graph: &Graph, ranked: &RankedList, params: &ClusterParams) -> Result<Option<Cut>> {
    let low = params.target_volume as f64 / 2.0;
    let high = 2 * params.target_volume;
    let bound = params.ratio_bound();
    let mut segment = Segment::new(graph);
    for &v in ranked.order() {
        segment.push(v)?;
        if segment.volume > high {
            return Ok(None);
        }
        if let Some(point) = segment.point() {
            if segment.volume as f64 >= low && point.ratio <= bound {
                return Ok(Some(Cut {
                    point,
                    members: ranked.order()[..segment.size].to_vec(),
                }));
            }
        }
    }
    Ok(None)
}

fn best_cut(graph: &Graph, ranked: &RankedList) -> Result<Cut> {
    let max_volume = graph.total_volume() / 2;
    let points = sweep_cuts(graph, ranked, max_volume)?;
    let best = points
        .iter()
        .copied()
        .reduce(|best, p| if p.ratio < best.ratio { p } else { best })
        .ok_or(Error::NoSegment { max_volume })?;
    Ok(Cut {
        point: best,
        members: ranked.order()[..best.size].to_vec(),
    })
}

/// The segment of minimum ratio among those with volume at most `vol(G)/2`;
/// ties go to the shorter segment.
pub fn min_ratio_sweep<V: VertexValues + ?Sized>(graph: &Graph, p: &V) -> Result<Cut> {
    let ranked = rank_by_prob_per_degree(graph, p)?;
    best_cut(graph, &ranked)
}

/// The three sweeps compared against each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Sampled heat kernel pagerank with the clustering temperature.
    EpsHkpr,
    /// Exact heat kernel pagerank with `t = 2φ⁻¹ ln s`.
    Hkpr,
    /// Exact personalized PageRank with `α` from [`compute_alpha`].
    PageRank,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::EpsHkpr, Algorithm::Hkpr, Algorithm::PageRank];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::EpsHkpr => "eps-hkpr",
            Algorithm::Hkpr => "hkpr",
            Algorithm::PageRank => "pr",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmCut {
    pub algorithm: Algorithm,
    /// `t` for the heat kernel sweeps, `α` for PageRank.
    pub parameter: f64,
    pub cut: Cut,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub cuts: [AlgorithmCut; 3],
    pub hkpr: HkprParams,
}

/// Runs the sampled heat kernel, exact heat kernel and PageRank sweeps from
/// the same seed, each returning its minimum-ratio segment up to `vol(G)/2`.
pub fn compare_clusters(
    graph: &Graph,
    u: usize,
    params: &ClusterParams,
    options: &ClusterOptions,
) -> Result<Comparison> {
    params.validate(graph)?;
    graph.check_vertex(u)?;
    if graph.degree(u) == 0 {
        return Err(Error::IsolatedVertex(u));
    }
    let t_sampled = params.temperature()?;
    let t_exact = 2.0 * (params.target_size as f64).ln() / params.target_ratio;
    let alpha = compute_alpha(params.target_ratio, graph.m())?;
    let hkpr = options.hkpr_params(graph, t_sampled, params.eps)?;

    let (sampled, (exact, pagerank)) = rayon::join(
        || -> Result<Cut> {
            let approx: ApproxDistribution = hkpr_approx_seed(graph, u, &hkpr)?;
            min_ratio_sweep(graph, &approx)
        },
        || {
            rayon::join(
                || -> Result<Cut> {
                    let rho = hkpr_exact_seed(graph, u, t_exact, DEFAULT_TOLERANCE)?;
                    min_ratio_sweep(graph, &rho)
                },
                || -> Result<Cut> {
                    let f = Distribution::indicator(graph.n(), u)?;
                    let pr = pagerank_exact(graph, &f, alpha, DEFAULT_TOLERANCE)?;
                    min_ratio_sweep(graph, &pr)
                },
            )
        },
    );

    Ok(Comparison {
        cuts: [
            AlgorithmCut {
                algorithm: Algorithm::EpsHkpr,
                parameter: t_sampled,
                cut: sampled?,
            },
            AlgorithmCut {
                algorithm: Algorithm::Hkpr,
                parameter: t_exact,
                cut: exact?,
            },
            AlgorithmCut {
                algorithm: Algorithm::PageRank,
                parameter: alpha,
                cut: pagerank?,
            },
        ],
        hkpr,
    })
}
