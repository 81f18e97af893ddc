//! Simple graphs and digraphs: edge-list parsing, degree and distance
//! statistics, family generators, and assembly of the four associated
//! matrices as shifted systems.
//!
//! Vertices are zero-based in the API; every text format and report
//! uses one-based numbering.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::ShiftedSystem;
use crate::connectivity;
use crate::matcore::NonnegMatrix;
use crate::spectra::MatrixKind;

fn fmt_line(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("self-loop at vertex {vertex}{}", fmt_line(line))]
    SelfLoop { vertex: usize, line: Option<usize> },
    #[error("duplicate edge {u} {v}{}", fmt_line(line))]
    DuplicateEdge {
        u: usize,
        v: usize,
        line: Option<usize>,
    },
    #[error("vertex {vertex} out of range 1..={n}{}", fmt_line(line))]
    IndexOutOfRange {
        vertex: usize,
        n: usize,
        line: Option<usize>,
    },
    #[error("graph is not connected ({components} components)")]
    NotConnected { components: usize },
    #[error("digraph is not strongly connected ({components} strongly connected components)")]
    NotStronglyConnected { components: usize },
    #[error("vertex {vertex} has degree 0: average neighbor degree undefined")]
    ZeroDegree { vertex: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Simple undirected graph: no loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// Simple digraph: no loops, no multi-arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DigraphRepr", into = "DigraphRepr")]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct DigraphRepr {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect(),
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = String;
    fn try_from(r: GraphRepr) -> Result<Self, String> {
        let edges: Result<Vec<_>, String> = r
            .edges
            .iter()
            .map(|&(u, v)| {
                if u == 0 || v == 0 {
                    Err("vertex numbering is one-based".to_string())
                } else {
                    Ok((u - 1, v - 1))
                }
            })
            .collect();
        Graph::new(r.n, edges?).map_err(|e| e.to_string())
    }
}

impl From<Digraph> for DigraphRepr {
    fn from(g: Digraph) -> Self {
        DigraphRepr {
            n: g.n,
            arcs: g.arcs.iter().map(|&(u, v)| (u + 1, v + 1)).collect(),
        }
    }
}

impl TryFrom<DigraphRepr> for Digraph {
    type Error = String;
    fn try_from(r: DigraphRepr) -> Result<Self, String> {
        let arcs: Result<Vec<_>, String> = r
            .arcs
            .iter()
            .map(|&(u, v)| {
                if u == 0 || v == 0 {
                    Err("vertex numbering is one-based".to_string())
                } else {
                    Ok((u - 1, v - 1))
                }
            })
            .collect();
        Digraph::new(r.n, arcs?).map_err(|e| e.to_string())
    }
}

/// Either parse result of the shared edge-list format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyGraph {
    Undirected(Graph),
    Directed(Digraph),
}

impl Graph {
    /// Builds a graph from zero-based endpoint pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::IndexOutOfRange {
                    vertex: u + 1,
                    n,
                    line: None,
                });
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange {
                    vertex: v + 1,
                    n,
                    line: None,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    vertex: u + 1,
                    line: None,
                });
            }
            let key = (u.min(v), u.max(v));
            if !set.insert(key) {
                return Err(GraphError::DuplicateEdge {
                    u: key.0 + 1,
                    v: key.1 + 1,
                    line: None,
                });
            }
        }
        Ok(Self { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted zero-based pairs with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn component_count(&self) -> usize {
        connectivity::component_count(&self.neighbor_lists())
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn adjacency_matrix(&self) -> NonnegMatrix {
        let mut entries = vec![0.0; self.n * self.n];
        for &(u, v) in &self.edges {
            entries[u * self.n + v] = 1.0;
            entries[v * self.n + u] = 1.0;
        }
        NonnegMatrix::from_flat(self.n, entries).expect("adjacency entries are 0/1")
    }

    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        degree_stats_from_lists(&self.neighbor_lists())
    }

    pub fn distance_stats(&self) -> Result<DistanceStats, GraphError> {
        let components = self.component_count();
        if components != 1 {
            return Err(GraphError::NotConnected { components });
        }
        Ok(distance_stats_from_lists(&self.neighbor_lists()))
    }

    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("directed: false\nn: {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

impl Digraph {
    /// Builds a digraph from zero-based ordered pairs.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n {
                return Err(GraphError::IndexOutOfRange {
                    vertex: u + 1,
                    n,
                    line: None,
                });
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange {
                    vertex: v + 1,
                    n,
                    line: None,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    vertex: u + 1,
                    line: None,
                });
            }
            if !set.insert((u, v)) {
                return Err(GraphError::DuplicateEdge {
                    u: u + 1,
                    v: v + 1,
                    line: None,
                });
            }
        }
        Ok(Self { n, arcs: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn out_neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            adj[u].push(v);
        }
        adj
    }

    pub fn scc_count(&self) -> usize {
        connectivity::scc_count(&self.out_neighbor_lists())
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.scc_count() == 1
    }

    pub fn adjacency_matrix(&self) -> NonnegMatrix {
        let mut entries = vec![0.0; self.n * self.n];
        for &(u, v) in &self.arcs {
            entries[u * self.n + v] = 1.0;
        }
        NonnegMatrix::from_flat(self.n, entries).expect("adjacency entries are 0/1")
    }

    /// Out-degree statistics: the `m` values average out-degrees over
    /// out-neighbors.
    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        degree_stats_from_lists(&self.out_neighbor_lists())
    }

    pub fn distance_stats(&self) -> Result<DistanceStats, GraphError> {
        let components = self.scc_count();
        if components != 1 {
            return Err(GraphError::NotStronglyConnected { components });
        }
        Ok(distance_stats_from_lists(&self.out_neighbor_lists()))
    }

    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("directed: true\nn: {}\n", self.n);
        for &(u, v) in &self.arcs {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

impl AnyGraph {
    pub fn n(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.n(),
            AnyGraph::Directed(g) => g.n(),
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, AnyGraph::Directed(_))
    }

    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        match self {
            AnyGraph::Undirected(g) => g.degree_stats(),
            AnyGraph::Directed(g) => g.degree_stats(),
        }
    }

    pub fn distance_stats(&self) -> Result<DistanceStats, GraphError> {
        match self {
            AnyGraph::Undirected(g) => g.distance_stats(),
            AnyGraph::Directed(g) => g.distance_stats(),
        }
    }

    pub fn to_edge_list_text(&self) -> String {
        match self {
            AnyGraph::Undirected(g) => g.to_edge_list_text(),
            AnyGraph::Directed(g) => g.to_edge_list_text(),
        }
    }
}

/// Degrees (or out-degrees), exact neighbor degree sums, and the
/// derived average neighbor degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub degrees: Vec<u64>,
    pub neighbor_degree_sums: Vec<u64>,
    pub average_neighbor_degrees: Vec<f64>,
}

fn degree_stats_from_lists(adj: &[Vec<usize>]) -> Result<DegreeStats, GraphError> {
    let degrees: Vec<u64> = adj.iter().map(|nb| nb.len() as u64).collect();
    if let Some(zero) = degrees.iter().position(|&d| d == 0) {
        return Err(GraphError::ZeroDegree { vertex: zero + 1 });
    }
    let neighbor_degree_sums: Vec<u64> = adj
        .iter()
        .map(|nb| nb.iter().map(|&j| degrees[j]).sum())
        .collect();
    let average_neighbor_degrees = neighbor_degree_sums
        .iter()
        .zip(&degrees)
        .map(|(&s, &d)| s as f64 / d as f64)
        .collect();
    Ok(DegreeStats {
        degrees,
        neighbor_degree_sums,
        average_neighbor_degrees,
    })
}

/// All-pairs shortest-path distances with transmissions `D_i` (row
/// sums) and second transmissions `T_i = sum_j dist(i,j) * D_j`, all in
/// exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceStats {
    n: usize,
    dist: Vec<u64>,
    pub transmissions: Vec<u64>,
    pub second_transmissions: Vec<u64>,
}

impl DistanceStats {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> u64 {
        self.dist[i * self.n + j]
    }

    pub fn matrix(&self) -> NonnegMatrix {
        NonnegMatrix::from_flat(self.n, self.dist.iter().map(|&d| d as f64).collect())
            .expect("distances are finite nonnegative")
    }
}

/// BFS from every source; callers have already verified reachability.
fn distance_stats_from_lists(adj: &[Vec<usize>]) -> DistanceStats {
    let n = adj.len();
    let mut dist = vec![0u64; n * n];
    let mut queue = std::collections::VecDeque::new();
    for src in 0..n {
        let row = &mut dist[src * n..(src + 1) * n];
        let mut seen = vec![false; n];
        seen[src] = true;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    row[w] = row[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        debug_assert!(seen.iter().all(|&s| s), "unreachable vertex from {src}");
    }
    let transmissions: Vec<u64> = (0..n)
        .map(|i| dist[i * n..(i + 1) * n].iter().sum())
        .collect();
    let second_transmissions: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| dist[i * n + j] * transmissions[j])
                .sum()
        })
        .collect();
    DistanceStats {
        n,
        dist,
        transmissions,
        second_transmissions,
    }
}

/// Assembles the `(A, t)` pair whose sum is the requested matrix of the
/// graph: adjacency, degree-shifted adjacency, distance, or
/// transmission-shifted distance.
pub fn build_system(g: &AnyGraph, kind: MatrixKind) -> Result<ShiftedSystem, GraphError> {
    if g.n() < 2 {
        return Err(GraphError::BadParams(
            "spectra need at least 2 vertices".to_string(),
        ));
    }
    match g {
        AnyGraph::Undirected(graph) => {
            let components = graph.component_count();
            if components != 1 {
                return Err(GraphError::NotConnected { components });
            }
        }
        AnyGraph::Directed(digraph) => {
            let components = digraph.scc_count();
            if components != 1 {
                return Err(GraphError::NotStronglyConnected { components });
            }
        }
    }
    let (off_diagonal, shift) = match kind {
        MatrixKind::Adjacency | MatrixKind::SignlessLaplacian => {
            let a = match g {
                AnyGraph::Undirected(graph) => graph.adjacency_matrix(),
                AnyGraph::Directed(digraph) => digraph.adjacency_matrix(),
            };
            let t = if kind == MatrixKind::Adjacency {
                vec![0.0; g.n()]
            } else {
                g.degree_stats()?
                    .degrees
                    .iter()
                    .map(|&d| d as f64)
                    .collect()
            };
            (a, t)
        }
        MatrixKind::Distance | MatrixKind::DistanceSignlessLaplacian => {
            let stats = g.distance_stats()?;
            let t = if kind == MatrixKind::Distance {
                vec![0.0; g.n()]
            } else {
                stats.transmissions.iter().map(|&d| d as f64).collect()
            };
            (stats.matrix(), t)
        }
    };
    Ok(ShiftedSystem::new(off_diagonal, shift).expect("connected input yields a valid system"))
}

/// Structural equality-case labels of a connected undirected graph.
/// All comparisons are exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub regular: bool,
    #[serde(with = "partition_opt")]
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    pub semiregular_bipartite: bool,
    pub same_partition_average_degree: bool,
}

type Bipartition = Option<(Vec<usize>, Vec<usize>)>;

mod partition_opt {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Bipartition;

    pub fn serialize<S: Serializer>(v: &Bipartition, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|(a, b)| {
                (
                    a.iter().map(|&x| x + 1).collect::<Vec<_>>(),
                    b.iter().map(|&x| x + 1).collect::<Vec<_>>(),
                )
            })
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Bipartition, D::Error> {
        use serde::de::Error as _;
        let raw = Bipartition::deserialize(d)?;
        raw.map(|(a, b)| {
            let shift = |part: Vec<usize>| {
                part.into_iter()
                    .map(|x| {
                        x.checked_sub(1)
                            .ok_or_else(|| D::Error::custom("indices are one-based; got 0"))
                    })
                    .collect::<Result<Vec<_>, _>>()
            };
            Ok((shift(a)?, shift(b)?))
        })
        .transpose()
    }
}

/// Classifies a connected graph: regular, bipartite (with the partition
/// listing vertex 1's part first), semi-regular bipartite, and bipartite
/// with constant average neighbor degree on each part.
pub fn classify(g: &Graph) -> Result<Classification, GraphError> {
    let components = g.component_count();
    if components != 1 {
        return Err(GraphError::NotConnected { components });
    }
    let stats = g.degree_stats()?;
    let d = &stats.degrees;
    let sums = &stats.neighbor_degree_sums;
    let regular = d.iter().all(|&x| x == d[0]);

    let coloring = connectivity::two_color(&g.neighbor_lists());
    let bipartition = coloring.map(|colors| {
        let u: Vec<usize> = (0..g.n()).filter(|&i| colors[i] == colors[0]).collect();
        let w: Vec<usize> = (0..g.n()).filter(|&i| colors[i] != colors[0]).collect();
        (u, w)
    });

    let part_constant = |part: &[usize], value: &dyn Fn(usize) -> (u64, u64)| -> bool {
        // values are exact rationals compared by cross-multiplication
        part.windows(2).all(|w| {
            let (an, ad) = value(w[0]);
            let (bn, bd) = value(w[1]);
            (an as u128) * (bd as u128) == (bn as u128) * (ad as u128)
        })
    };

    let (semiregular_bipartite, same_partition_average_degree) = match &bipartition {
        Some((u, w)) => {
            let degree_of = |i: usize| (d[i], 1);
            let average_of = |i: usize| (sums[i], d[i]);
            (
                part_constant(u, &degree_of) && part_constant(w, &degree_of),
                part_constant(u, &average_of) && part_constant(w, &average_of),
            )
        }
        None => (false, false),
    };

    Ok(Classification {
        regular,
        bipartition,
        semiregular_bipartite,
        same_partition_average_degree,
    })
}

/// Named graph families for test corpora and the generator command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Petersen,
    DirectedCycle { n: usize },
    RandomConnected { n: usize, p: f64, seed: u64 },
    RandomStrongDigraph { n: usize, p: f64, seed: u64 },
}

/// Deterministic generator: fixed family, parameters, and seed always
/// produce the same graph.
pub fn generate(family: &Family) -> Result<AnyGraph, GraphError> {
    let bad = |msg: &str| Err(GraphError::BadParams(msg.to_string()));
    match *family {
        Family::Path { n } => {
            if n < 2 {
                return bad("path needs n >= 2");
            }
            let edges = (0..n - 1).map(|i| (i, i + 1));
            Ok(AnyGraph::Undirected(Graph::new(n, edges)?))
        }
        Family::Cycle { n } => {
            if n < 3 {
                return bad("cycle needs n >= 3");
            }
            let edges = (0..n).map(|i| (i, (i + 1) % n));
            Ok(AnyGraph::Undirected(Graph::new(n, edges)?))
        }
        Family::Star { leaves } => {
            if leaves < 1 {
                return bad("star needs at least 1 leaf");
            }
            let edges = (1..=leaves).map(|i| (0, i));
            Ok(AnyGraph::Undirected(Graph::new(leaves + 1, edges)?))
        }
        Family::Complete { n } => {
            if n < 2 {
                return bad("complete graph needs n >= 2");
            }
            let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            Ok(AnyGraph::Undirected(Graph::new(n, edges)?))
        }
        Family::CompleteBipartite { a, b } => {
            if a < 1 || b < 1 {
                return bad("complete bipartite needs both parts nonempty");
            }
            let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j)));
            Ok(AnyGraph::Undirected(Graph::new(a + b, edges)?))
        }
        Family::Petersen => {
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5)); // outer cycle
                edges.push((i, i + 5)); // spokes
                edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
            }
            Ok(AnyGraph::Undirected(Graph::new(10, edges)?))
        }
        Family::DirectedCycle { n } => {
            if n < 2 {
                return bad("directed cycle needs n >= 2");
            }
            let arcs = (0..n).map(|i| (i, (i + 1) % n));
            Ok(AnyGraph::Directed(Digraph::new(n, arcs)?))
        }
        Family::RandomConnected { n, p, seed } => {
            if n < 2 {
                return bad("random connected graph needs n >= 2");
            }
            if !(0.0..=1.0).contains(&p) {
                return bad("edge probability must lie in [0, 1]");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // random spanning tree first, then independent extras
            let mut labels: Vec<usize> = (0..n).collect();
            labels.shuffle(&mut rng);
            let mut edges = BTreeSet::new();
            for k in 1..n {
                let parent = labels[rng.random_range(0..k)];
                let child = labels[k];
                edges.insert((parent.min(child), parent.max(child)));
            }
            for i in 0..n {
                for j in i + 1..n {
                    if !edges.contains(&(i, j)) && rng.random::<f64>() < p {
                        edges.insert((i, j));
                    }
                }
            }
            Ok(AnyGraph::Undirected(Graph::new(n, edges)?))
        }
        Family::RandomStrongDigraph { n, p, seed } => {
            if n < 2 {
                return bad("random strong digraph needs n >= 2");
            }
            if !(0.0..=1.0).contains(&p) {
                return bad("arc probability must lie in [0, 1]");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // a random spanning circuit keeps it strongly connected
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut arcs = BTreeSet::new();
            for k in 0..n {
                arcs.insert((order[k], order[(k + 1) % n]));
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j && !arcs.contains(&(i, j)) && rng.random::<f64>() < p {
                        arcs.insert((i, j));
                    }
                }
            }
            Ok(AnyGraph::Directed(Digraph::new(n, arcs)?))
        }
    }
}

/// Parses the edge-list format: optional `#` comment lines, a
/// `directed:` header, an `n:` header, then one one-based `u v` pair
/// per line.
pub fn parse_graph(text: &str) -> Result<AnyGraph, GraphError> {
    enum Stage {
        Directed,
        Order,
        Edges,
    }
    let mut stage = Stage::Directed;
    let mut directed = false;
    let mut n = 0usize;
    let mut seen_undirected: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut seen_directed: BTreeSet<(usize, usize)> = BTreeSet::new();

    let syntax = |line: usize, column: usize, message: String| GraphError::Syntax {
        line,
        column,
        message,
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let column = raw.len() - trimmed.len() + 1;
        match stage {
            Stage::Directed => {
                let Some(rest) = trimmed.strip_prefix("directed:") else {
                    return Err(syntax(
                        line_no,
                        column,
                        "expected `directed: true|false` header".to_string(),
                    ));
                };
                directed = match rest.trim() {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(syntax(
                            line_no,
                            column + "directed:".len(),
                            format!("expected true or false, got `{other}`"),
                        ))
                    }
                };
                stage = Stage::Order;
            }
            Stage::Order => {
                let Some(rest) = trimmed.strip_prefix("n:") else {
                    return Err(syntax(
                        line_no,
                        column,
                        "expected `n: <count>` header".to_string(),
                    ));
                };
                n = rest.trim().parse().map_err(|_| {
                    syntax(
                        line_no,
                        column + "n:".len(),
                        format!("invalid vertex count `{}`", rest.trim()),
                    )
                })?;
                if n == 0 {
                    return Err(syntax(
                        line_no,
                        column + "n:".len(),
                        "vertex count must be positive".to_string(),
                    ));
                }
                stage = Stage::Edges;
            }
            Stage::Edges => {
                let mut parts = trimmed.split_whitespace();
                let (u_tok, v_tok) = match (parts.next(), parts.next()) {
                    (Some(u), Some(v)) => (u, v),
                    _ => {
                        return Err(syntax(
                            line_no,
                            column,
                            "expected two vertex numbers".to_string(),
                        ))
                    }
                };
                if let Some(extra) = parts.next() {
                    let col = raw.find(extra).unwrap_or(0) + 1;
                    return Err(syntax(
                        line_no,
                        col,
                        format!("unexpected trailing token `{extra}`"),
                    ));
                }
                let parse_vertex = |tok: &str| -> Result<usize, GraphError> {
                    let col = raw.find(tok).unwrap_or(0) + 1;
                    let value: usize = tok.parse().map_err(|_| {
                        syntax(line_no, col, format!("invalid vertex number `{tok}`"))
                    })?;
                    if value == 0 || value > n {
                        return Err(GraphError::IndexOutOfRange {
                            vertex: value,
                            n,
                            line: Some(line_no),
                        });
                    }
                    Ok(value - 1)
                };
                let u = parse_vertex(u_tok)?;
                let v = parse_vertex(v_tok)?;
                if u == v {
                    return Err(GraphError::SelfLoop {
                        vertex: u + 1,
                        line: Some(line_no),
                    });
                }
                if directed {
                    if !seen_directed.insert((u, v)) {
                        return Err(GraphError::DuplicateEdge {
                            u: u + 1,
                            v: v + 1,
                            line: Some(line_no),
                        });
                    }
                } else {
                    let key = (u.min(v), u.max(v));
                    if !seen_undirected.insert(key) {
                        return Err(GraphError::DuplicateEdge {
                            u: key.0 + 1,
                            v: key.1 + 1,
                            line: Some(line_no),
                        });
                    }
                }
            }
        }
    }

    match stage {
        Stage::Directed => Err(syntax(1, 1, "missing `directed:` header".to_string())),
        Stage::Order => Err(syntax(1, 1, "missing `n:` header".to_string())),
        Stage::Edges => {
            if directed {
                Ok(AnyGraph::Directed(Digraph {
                    n,
                    arcs: seen_directed,
                }))
            } else {
                Ok(AnyGraph::Undirected(Graph {
                    n,
                    edges: seen_undirected,
                }))
            }
        }
    }
}
