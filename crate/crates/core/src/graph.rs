//! Undirected simple graphs in compressed adjacency form, together with the
//! set quantities every sweep and bound is phrased in: volume, edge boundary
//! and Cheeger ratio.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};

/// Largest set accepted by [`local_cheeger_brute`]. The enumeration visits
/// `2^|S| - 1` subsets.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Immutable undirected graph without self-loops or parallel edges.
///
/// Vertices are `0..n`. Neighbor lists are sorted ascending, and every vertex
/// carries a label used when reading and writing edge lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<String>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled by their ids.
    ///
    /// Edges are symmetrized; self-loops and repeated edges are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (0..n).map(|v| v.to_string()).collect();
        Ok(Self::build(n, edges, labels)?.0)
    }

    /// Returns the graph and the number of (self-loops, duplicate edges) dropped.
    fn build<I>(n: usize, edges: I, labels: Vec<String>) -> Result<(Self, usize, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut self_loops = 0;
        let mut total = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                self_loops += 1;
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            total += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * total);
        offsets.push(0);
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        let m = targets.len() / 2;
        let graph = Graph {
            offsets,
            targets,
            labels,
            m,
        };
        Ok((graph, self_loops, total - m))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `vol(G) = 2m`.
    pub fn total_volume(&self) -> u64 {
        2 * self.m as u64
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Each edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Draws a vertex with probability `d_v / vol(G)`.
    pub fn sample_by_degree<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        if self.m == 0 {
            return Err(Error::EmptyInput);
        }
        // offsets[v] is the volume of the vertices before v.
        let target = rng.random_range(0..2 * self.m);
        Ok(self.offsets.partition_point(|&o| o <= target) - 1)
    }

    /// `vol(S) = Σ_{v∈S} d_v`.
    pub fn volume(&self, set: &VertexSet) -> Result<u64> {
        self.check_set(set)?;
        Ok(set.volume)
    }

    /// Number of edges with exactly one endpoint in `set`.
    pub fn edge_boundary(&self, set: &VertexSet) -> Result<u64> {
        self.check_set(set)?;
        let mut inside = vec![false; self.n()];
        for &v in &set.members {
            inside[v] = true;
        }
        let crossing = set
            .members
            .iter()
            .flat_map(|&v| self.neighbors(v))
            .filter(|&&w| !inside[w])
            .count();
        Ok(crossing as u64)
    }

    /// `|∂S| / min(vol(S), vol(V∖S))`.
    pub fn cheeger_ratio(&self, set: &VertexSet) -> Result<f64> {
        if set.is_empty() {
            return Err(Error::UndefinedRatio("empty set"));
        }
        if set.len() == self.n() {
            return Err(Error::UndefinedRatio("set is the whole vertex set"));
        }
        let boundary = self.edge_boundary(set)?;
        ratio(boundary, set.volume, self.total_volume())
            .ok_or(Error::UndefinedRatio("one side has zero volume"))
    }

    fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: set.universe,
            });
        }
        Ok(())
    }

    /// Writes the graph back as a label edge list, one edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[v]);
        }
        out
    }
}

/// Cheeger ratio from raw counts; `None` when the smaller side has volume 0.
pub fn ratio(boundary: u64, volume: u64, total_volume: u64) -> Option<f64> {
    let smaller = volume.min(total_volume.saturating_sub(volume));
    (smaller > 0).then(|| boundary as f64 / smaller as f64)
}

/// A validated set of vertices of one graph, with its volume cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<usize>,
    volume: u64,
    universe: usize,
}

impl VertexSet {
    pub fn new<I>(graph: &Graph, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut members: Vec<usize> = vertices.into_iter().collect();
        for &v in &members {
            graph.check_vertex(v)?;
        }
        members.sort_unstable();
        members.dedup();
        let volume = members.iter().map(|&v| graph.degree(v) as u64).sum();
        Ok(Self {
            members,
            volume,
            universe: graph.n(),
        })
    }

    pub fn all(graph: &Graph) -> Self {
        Self {
            members: (0..graph.n()).collect(),
            volume: graph.total_volume(),
            universe: graph.n(),
        }
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn volume(&self) -> u64 {
        self.volume
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn complement(&self, graph: &Graph) -> Self {
        let members: Vec<usize> = (0..graph.n()).filter(|&v| !self.contains(v)).collect();
        let volume = graph.total_volume() - self.volume;
        Self {
            members,
            volume,
            universe: graph.n(),
        }
    }
}

/// `Φ*(S) = min_{∅≠T⊆S} Φ(T)`, by exhaustive enumeration.
///
/// Subsets whose ratio is undefined (the whole graph, or zero volume) are
/// skipped. Intended as a test oracle, so `|S|` is capped at
/// [`BRUTE_FORCE_LIMIT`].
pub fn local_cheeger_brute(graph: &Graph, set: &VertexSet) -> Result<f64> {
    graph.check_set(set)?;
    let s = set.len();
    if s == 0 {
        return Err(Error::EmptySet);
    }
    if s > BRUTE_FORCE_LIMIT {
        return Err(Error::SetTooLarge {
            size: s,
            limit: BRUTE_FORCE_LIMIT,
        });
    }

    let members = set.members();
    let degrees: Vec<u64> = members.iter().map(|&v| graph.degree(v) as u64).collect();
    // Bit j of inner[i] is set when members i and j are adjacent.
    let inner: Vec<u32> = members
        .iter()
        .map(|&v| {
            members
                .iter()
                .enumerate()
                .filter(|&(_, &w)| graph.has_edge(v, w))
                .fold(0u32, |acc, (j, _)| acc | (1 << j))
        })
        .collect();

    let total = graph.total_volume();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1u32 << s) {
        if mask.count_ones() as usize == graph.n() {
            continue;
        }
        let mut volume = 0;
        let mut internal_twice = 0;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            volume += degrees[i];
            internal_twice += u64::from((inner[i] & mask).count_ones());
        }
        if let Some(r) = ratio(volume - internal_twice, volume, total) {
            best = best.min(r);
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::UndefinedRatio("no subset has a defined ratio"))
    }
}

/// A parsed edge list.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` and blank lines are ignored. Labels are arbitrary
/// tokens and receive dense ids in order of first appearance. Directed input
/// is symmetrized, so `a b` and `b a` describe the same edge.
pub fn load_edge_list(text: &str) -> Result<EdgeList> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |token, labels: &mut Vec<String>| -> usize {
        *ids.entry(token).or_insert_with(|| {
            labels.push(token.to_string());
            labels.len() - 1
        })
    };

    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: index + 1,
                message: format!("expected two vertex labels, found {}", tokens.len()),
            });
        }
        let u = intern(tokens[0], &mut labels);
        let v = intern(tokens[1], &mut labels);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }

    let n = labels.len();
    let (graph, self_loops_dropped, duplicates_dropped) = Graph::build(n, edges, labels)?;
    Ok(EdgeList {
        graph,
        self_loops_dropped,
        duplicates_dropped,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1)]).unwrap()
    }

    pub fn k3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub fn path4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    /// Triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
    pub fn bridged_triangles() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn degree_sampling_frequencies() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut rng = crate::rng::substream(3, 0);
        let mut hits = [0i64; 5];
        for _ in 0..60_000 {
            hits[g.sample_by_degree(&mut rng).unwrap()] += 1;
        }
        assert_eq!(hits[4], 0);
        // Expected 30000 then 10000 each; 5σ is about 600.
        assert!((hits[0] - 30_000).abs() < 600, "{hits:?}");
        assert!((1..4).all(|v| (hits[v] - 10_000).abs() < 600), "{hits:?}");
        let empty = Graph::from_edges(2, []).unwrap();
        assert_eq!(empty.sample_by_degree(&mut rng), Err(Error::EmptyInput));
    }

    fn set(g: &Graph, v: &[usize]) -> VertexSet {
        VertexSet::new(g, v.iter().copied()).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let parsed = load_edge_list("0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(parsed.graph.n(), 3);
        assert_eq!(parsed.graph.m(), 3);
        assert_eq!(parsed.duplicates_dropped, 0);
    }

    #[test]
    fn reversed_duplicate_is_dropped() {
        let parsed = load_edge_list("a b\nb a\n").unwrap();
        assert_eq!(parsed.graph.n(), 2);
        assert_eq!(parsed.graph.m(), 1);
        assert_eq!(parsed.duplicates_dropped, 1);
        assert_eq!(parsed.graph.label(0), "a");
    }

    #[test]
    fn comments_self_loops_and_errors() {
        let parsed = load_edge_list("# header\n\nx x\nx y\n").unwrap();
        assert_eq!(parsed.self_loops_dropped, 1);
        assert_eq!(parsed.graph.m(), 1);

        assert_eq!(
            load_edge_list("1 2\n3\n").unwrap_err(),
            Error::Parse {
                line: 2,
                message: "expected two vertex labels, found 1".into()
            }
        );
        assert!(matches!(load_edge_list("1 2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert_eq!(load_edge_list("# only\n").unwrap_err(), Error::EmptyInput);
        assert_eq!(load_edge_list("").unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn volumes() {
        let k3 = k3();
        assert_eq!(k3.volume(&set(&k3, &[0])).unwrap(), 2);
        assert_eq!(k3.volume(&VertexSet::all(&k3)).unwrap(), 6);
        let p = path4();
        assert_eq!(p.volume(&set(&p, &[0, 1])).unwrap(), 3);
        assert!(matches!(
            VertexSet::new(&p, [4]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn boundaries() {
        let k3 = k3();
        assert_eq!(k3.edge_boundary(&set(&k3, &[])).unwrap(), 0);
        assert_eq!(k3.edge_boundary(&set(&k3, &[0])).unwrap(), 2);
        let p = path4();
        assert_eq!(p.edge_boundary(&set(&p, &[0, 1])).unwrap(), 1);
    }

    #[test]
    fn ratios() {
        let k3 = k3();
        assert_eq!(k3.cheeger_ratio(&set(&k3, &[0])).unwrap(), 1.0);
        let p = path4();
        assert!((p.cheeger_ratio(&set(&p, &[0, 1])).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let b = bridged_triangles();
        assert!((b.cheeger_ratio(&set(&b, &[0, 1, 2])).unwrap() - 1.0 / 7.0).abs() < 1e-15);
        assert!(matches!(k3.cheeger_ratio(&set(&k3, &[])), Err(Error::UndefinedRatio(_))));
        assert!(matches!(
            k3.cheeger_ratio(&VertexSet::all(&k3)),
            Err(Error::UndefinedRatio(_))
        ));
    }

    #[test]
    fn brute_force_local_cheeger() {
        let k3 = k3();
        assert_eq!(local_cheeger_brute(&k3, &set(&k3, &[0])).unwrap(), 1.0);
        // Φ({0,1}) = 2 / min(4, 2): every proper cut of K3 has ratio 1.
        assert_eq!(local_cheeger_brute(&k3, &set(&k3, &[0, 1])).unwrap(), 1.0);
        let b = bridged_triangles();
        let tri = set(&b, &[0, 1, 2]);
        assert!((local_cheeger_brute(&b, &tri).unwrap() - 1.0 / 7.0).abs() < 1e-15);
        assert_eq!(local_cheeger_brute(&k3, &set(&k3, &[])).unwrap_err(), Error::EmptySet);

        let big = Graph::from_edges(21, (0..20).map(|i| (i, i + 1))).unwrap();
        assert!(matches!(
            local_cheeger_brute(&big, &VertexSet::all(&big)),
            Err(Error::SetTooLarge { size: 21, limit: 20 })
        ));
    }

    #[test]
    fn complement_and_connectivity() {
        let b = bridged_triangles();
        let tri = set(&b, &[0, 1, 2]);
        let rest = tri.complement(&b);
        assert_eq!(rest.members(), &[3, 4, 5]);
        assert_eq!(rest.volume() + tri.volume(), b.total_volume());
        assert!(b.is_connected());
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!split.is_connected());
    }

    #[test]
    fn edge_list_round_trip_preserves_labelled_adjacency() {
        let text = "alpha beta\nbeta gamma\ndelta alpha\ngamma delta\nbeta delta\n";
        let first = load_edge_list(text).unwrap().graph;
        let second = load_edge_list(&first.to_edge_list()).unwrap().graph;
        let labelled = |g: &Graph| {
            let mut e: Vec<(String, String)> = g
                .edges()
                .map(|(u, v)| {
                    let (a, b) = (g.label(u).to_string(), g.label(v).to_string());
                    if a < b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            e.sort();
            e
        };
        assert_eq!(labelled(&first), labelled(&second));
    }
}
