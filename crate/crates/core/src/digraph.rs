//! Simple directed graphs with a fixed total vertex order.
//!
//! The order of the vertex list is the total order used by the exploration
//! algorithm; in-edge lists are sorted by source in that order.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub id: EdgeId,
    pub source: VertexId,
    pub target: VertexId,
}

/// Set of vertices of a graph with at most 64 vertices, stored as a bitmask.
/// The derived order is bitmask-ascending.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const MAX_VERTICES: usize = 64;

    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_VERTICES, "vertex sets hold at most 64 vertices");
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn min(self) -> Option<VertexId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Finite simple directed graph without loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    by_endpoints: HashMap<(VertexId, VertexId), EdgeId>,
    dropped_loops: Vec<VertexId>,
}

impl DiGraph {
    /// Builds a graph from `(source, target)` pairs. Edge ids follow input
    /// order. Loops are dropped and remembered; parallel edges are rejected.
    pub fn new(labels: Vec<String>, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = labels.len();
        let mut edges = Vec::with_capacity(pairs.len());
        let mut by_endpoints = HashMap::new();
        let mut dropped_loops = Vec::new();
        for &(s, t) in pairs {
            if s >= n {
                return Err(Error::VertexOutOfRange(s));
            }
            if t >= n {
                return Err(Error::VertexOutOfRange(t));
            }
            if s == t {
                dropped_loops.push(s);
                continue;
            }
            let id = edges.len();
            if by_endpoints.insert((s, t), id).is_some() {
                return Err(Error::ParallelEdge { tail: s, head: t });
            }
            edges.push(Edge { id, source: s, target: t });
        }
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for e in &edges {
            out_edges[e.source].push(e.id);
            in_edges[e.target].push(e.id);
        }
        for list in &mut out_edges {
            list.sort_by_key(|&e| edges[e].target);
        }
        for list in &mut in_edges {
            list.sort_by_key(|&e| edges[e].source);
        }
        Ok(DiGraph {
            labels,
            edges,
            out_edges,
            in_edges,
            by_endpoints,
            dropped_loops,
        })
    }

    /// Vertices labelled `1..=n`.
    pub fn with_vertex_count(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()).collect(), pairs)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn find_edge(&self, source: VertexId, target: VertexId) -> Option<EdgeId> {
        self.by_endpoints.get(&(source, target)).copied()
    }

    /// Out-edges of `v`, sorted by target.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    /// In-edges of `v`, sorted by source.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_edges[v].len()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Vertices whose loops were discarded on construction.
    pub fn dropped_loops(&self) -> &[VertexId] {
        &self.dropped_loops
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.edges.iter().map(|e| (e.source, e.target)).collect()
    }

    pub fn format_set(&self, set: VertexSet) -> String {
        let names: Vec<&str> = set.iter().map(|v| self.label(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    fn reach(&self, start: VertexId, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            let list = if forward { &self.out_edges[v] } else { &self.in_edges[v] };
            for &e in list {
                let w = if forward { self.edges[e].target } else { self.edges[e].source };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Every ordered pair of vertices is joined by a directed path.
    pub fn is_strongly_connected(&self) -> bool {
        if self.vertex_count() <= 1 {
            return true;
        }
        self.reach(0, true).iter().all(|&b| b) && self.reach(0, false).iter().all(|&b| b)
    }

    /// Bitmask of out-neighbours, for graphs with at most 64 vertices.
    pub fn out_mask(&self, v: VertexId) -> u64 {
        self.out_edges[v]
            .iter()
            .fold(0, |acc, &e| acc | 1u64 << self.edges[e].target)
    }

    pub fn in_mask(&self, v: VertexId) -> u64 {
        self.in_edges[v]
            .iter()
            .fold(0, |acc, &e| acc | 1u64 << self.edges[e].source)
    }

    /// `G_W` is strongly connected. Singletons are, the empty set is not.
    pub fn is_strongly_connected_subset(&self, w: VertexSet) -> bool {
        let Some(start) = w.min() else { return false };
        let outs: Vec<u64> = (0..self.vertex_count()).map(|v| self.out_mask(v)).collect();
        let ins: Vec<u64> = (0..self.vertex_count()).map(|v| self.in_mask(v)).collect();
        closure_within(&outs, start, w.bits()) == w.bits() && closure_within(&ins, start, w.bits()) == w.bits()
    }

    /// The graph `G_W` with the edges having both endpoints in `w`. Vertex
    /// order and labels are inherited; edge ids are renumbered densely in
    /// the original id order.
    pub fn induced_subgraph(&self, w: VertexSet) -> Result<DiGraph> {
        if w.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(v) = w.iter().find(|&v| v >= self.vertex_count()) {
            return Err(Error::VertexOutOfRange(v));
        }
        let keep = w.to_vec();
        let mut new_index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let pairs: Vec<_> = self
            .edges
            .iter()
            .filter(|e| w.contains(e.source) && w.contains(e.target))
            .map(|e| (new_index[e.source], new_index[e.target]))
            .collect();
        DiGraph::new(keep.iter().map(|&v| self.labels[v].clone()).collect(), &pairs)
    }

    /// All nonempty strongly connected subsets, bitmask-ascending.
    pub fn strongly_connected_subsets(&self, limit: usize) -> Result<Vec<VertexSet>> {
        let n = self.vertex_count();
        if n > limit || n >= 64 {
            return Err(Error::SubsetLimit { vertices: n, limit });
        }
        let outs: Vec<u64> = (0..n).map(|v| self.out_mask(v)).collect();
        let ins: Vec<u64> = (0..n).map(|v| self.in_mask(v)).collect();
        Ok((1u64..1 << n)
            .filter(|&mask| {
                let start = mask.trailing_zeros() as usize;
                closure_within(&outs, start, mask) == mask && closure_within(&ins, start, mask) == mask
            })
            .map(VertexSet)
            .collect())
    }

    /// Strongly connected components of `G_X`, ordered by least vertex.
    pub fn scc_components(&self, x: VertexSet) -> Vec<VertexSet> {
        let outs: Vec<u64> = (0..self.vertex_count()).map(|v| self.out_mask(v)).collect();
        let ins: Vec<u64> = (0..self.vertex_count()).map(|v| self.in_mask(v)).collect();
        scc_masks(&outs, &ins, x.bits()).into_iter().map(VertexSet).collect()
    }

    /// Same edges (same ids) on reordered vertices: new vertex `i` is old
    /// vertex `order[i]`.
    pub fn reordered(&self, order: &[VertexId]) -> Result<DiGraph> {
        let n = self.vertex_count();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::Parse(format!("not a permutation of 0..{n}")));
            }
            pos[v] = i;
        }
        if order.len() != n {
            return Err(Error::Parse(format!("not a permutation of 0..{n}")));
        }
        let pairs: Vec<_> = self.edges.iter().map(|e| (pos[e.source], pos[e.target])).collect();
        DiGraph::new(order.iter().map(|&v| self.labels[v].clone()).collect(), &pairs)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord { s: e.source, t: e.target })
                .collect(),
            multi: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }

    /// Parses the JSON graph format. Multigraph files (`"multi": true`) are
    /// rejected here; see [`crate::multiedge`].
    pub fn from_json(text: &str) -> Result<DiGraph> {
        let file = GraphFile::parse(text)?;
        if file.multi == Some(true) {
            return Err(Error::Parse("multigraph input must be subdivided first".into()));
        }
        file.to_digraph()
    }
}

/// Vertices reachable from `start` inside `within`, as a bitmask.
fn closure_within(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & within & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// SCCs of the subgraph induced on `within`, by forward/backward closure.
fn scc_masks(outs: &[u64], ins: &[u64], within: u64) -> Vec<u64> {
    let mut rest = within;
    let mut comps = Vec::new();
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        let comp = closure_within(outs, v, within) & closure_within(ins, v, within);
        comps.push(comp);
        rest &= !comp;
    }
    comps
}

/// On-disk graph format. Array order is the vertex total order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multi: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub s: usize,
    pub t: usize,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = file.vertices.len();
        for (i, e) in file.edges.iter().enumerate() {
            if e.s >= n {
                return Err(Error::Parse(format!("edges[{i}].s: vertex index {} out of range (0..{n})", e.s)));
            }
            if e.t >= n {
                return Err(Error::Parse(format!("edges[{i}].t: vertex index {} out of range (0..{n})", e.t)));
            }
        }
        Ok(file)
    }

    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.edges.iter().map(|e| (e.s, e.t)).collect()
    }

    pub fn to_digraph(&self) -> Result<DiGraph> {
        DiGraph::new(self.vertices.clone(), &self.pairs()).map_err(|e| match e {
            Error::ParallelEdge { tail, head } => Error::Parse(format!(
                "edges: parallel edge {tail} -> {head}; set \"multi\": true to subdivide"
            )),
            other => other,
        })
    }
}

/// Random strongly connected graph on `n` vertices: each ordered pair is an
/// edge with probability `p`, resampled until strongly connected.
pub fn random_strongly_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> DiGraph {
    assert!(n >= 1 && p > 0.0);
    loop {
        let mut pairs = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if s != t && rng.random_bool(p) {
                    pairs.push((s, t));
                }
            }
        }
        let g = DiGraph::with_vertex_count(n, &pairs).expect("generated graph is simple");
        if g.is_strongly_connected() {
            return g;
        }
    }
}

/// Every simple graph on `n` labelled vertices, indexed by a bitmask over
/// the `n(n-1)` ordered pairs.
pub fn all_graphs(n: usize) -> impl Iterator<Item = DiGraph> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .collect();
    let count = 1u64 << slots.len();
    (0..count).map(move |mask| {
        let pairs: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        DiGraph::with_vertex_count(n, &pairs).expect("enumerated graph is simple")
    })
}
