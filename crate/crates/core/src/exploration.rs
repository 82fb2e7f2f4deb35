//! The ordered exploration of a spanning tree, the multiplicities `m(W)` it
//! defines, and the signed-sum multiplicities `n(W)` used as an oracle.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{det_integer, SquareMatrix};
use crate::digraph::{DiGraph, EdgeId, VertexId, VertexSet};
use crate::error::{Error, Result};
use crate::spanning::{self, SpanningTree};
use crate::treegraph::TreeId;
use crate::Guards;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationResult {
    /// `φ(a)`, the explored vertices.
    pub phi: VertexSet,
    /// `ψ(a)`, the strongly connected component of the root inside `φ(a)`.
    pub psi: VertexSet,
    pub erased: VertexSet,
    /// Vertices outside `φ(a)` with an out-edge into `φ(a)`.
    pub boundary: VertexSet,
    /// Explored vertices in order of discovery, root first.
    pub discovery_order: Vec<VertexId>,
    /// For each erased vertex, the scanned edge that erased it.
    pub erase_witness: Vec<(VertexId, EdgeId)>,
}

fn check_size(g: &DiGraph) -> Result<()> {
    if g.vertex_count() > VertexSet::MAX_VERTICES {
        return Err(Error::SubsetLimit {
            vertices: g.vertex_count(),
            limit: VertexSet::MAX_VERTICES,
        });
    }
    Ok(())
}

/// Runs the exploration on `a`. The edge list is a FIFO queue with lazy
/// deletion; an edge enters it at most once.
pub fn explore(g: &DiGraph, a: &SpanningTree) -> Result<ExplorationResult> {
    check_size(g)?;
    if a.out_map().len() != g.vertex_count() {
        return Err(Error::NotSpanningTree("tree belongs to another graph".into()));
    }
    SpanningTree::from_edges(g, a.root(), a.edges())?;
    Ok(run(g, a, true))
}

fn run(g: &DiGraph, a: &SpanningTree, suppress_accepted: bool) -> ExplorationResult {
    let root = a.root();
    let m = g.edge_count();
    let mut in_f: Vec<bool> = g.edges().iter().map(|e| e.source != root).collect();
    let mut in_l = vec![false; m];
    let mut queue = VecDeque::new();
    let mut accepted = VertexSet::singleton(root);
    let mut erased = VertexSet::empty();
    let mut order = vec![root];
    let mut witness = Vec::new();
    for &e in g.in_edges(root) {
        in_l[e] = true;
        in_f[e] = false;
        queue.push_back(e);
    }
    while let Some(e) = queue.pop_front() {
        if !in_l[e] {
            continue;
        }
        in_l[e] = false;
        let w = g.edge(e).source;
        if a.contains_edge(g, e) {
            accepted.insert(w);
            order.push(w);
            for &f in g.out_edges(w) {
                in_l[f] = false;
                if suppress_accepted {
                    in_f[f] = false;
                }
            }
            for &f in g.in_edges(w) {
                if in_f[f] {
                    in_f[f] = false;
                    in_l[f] = true;
                    queue.push_back(f);
                }
            }
        } else {
            erased.insert(w);
            witness.push((w, e));
            for &f in g.out_edges(w).iter().chain(g.in_edges(w)) {
                in_l[f] = false;
                in_f[f] = false;
            }
        }
    }
    let psi = g
        .scc_components(accepted)
        .into_iter()
        .find(|c| c.contains(root))
        .expect("the root lies in some component");
    let boundary: VertexSet = (0..g.vertex_count())
        .filter(|&v| !accepted.contains(v))
        .filter(|&v| g.out_edges(v).iter().any(|&f| accepted.contains(g.edge(f).target)))
        .collect();
    ExplorationResult {
        phi: accepted,
        psi,
        erased,
        boundary,
        discovery_order: order,
        erase_witness: witness,
    }
}

/// The tree `a_{V,v}`: breadth-first search from `v` along in-edges,
/// sources scanned in increasing order, keeping the edges of first discovery.
pub fn bfs_tree(g: &DiGraph, v: VertexId) -> Result<SpanningTree> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(v));
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &e in g.in_edges(u) {
            let s = g.edge(e).source;
            if !seen[s] {
                seen[s] = true;
                edges.push(e);
                queue.push_back(s);
            }
        }
    }
    SpanningTree::from_edges(g, v, &edges)
}

/// `m(W, w)` for every pair seen, with the trees realizing it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityCounts {
    pub counts: BTreeMap<(VertexSet, VertexId), Vec<TreeId>>,
    pub tree_count: usize,
}

/// Explores every tree of the list, bucketing by `(ψ(a), root(a))`.
pub fn multiplicity_counts(g: &DiGraph, trees: &[SpanningTree]) -> Result<MultiplicityCounts> {
    check_size(g)?;
    let mut counts: BTreeMap<(VertexSet, VertexId), Vec<TreeId>> = BTreeMap::new();
    for (i, a) in trees.iter().enumerate() {
        let psi = run(g, a, true).psi;
        counts.entry((psi, a.root())).or_default().push(i);
    }
    Ok(MultiplicityCounts { counts, tree_count: trees.len() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityEntry {
    pub set: VertexSet,
    pub m: u64,
    /// Trees rooted at `w` with `ψ = W`, for each `w` in `W`.
    pub witnesses: BTreeMap<VertexId, Vec<TreeId>>,
}

/// `m(W)` for every strongly connected `W`, bitmask-ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub entries: Vec<MultiplicityEntry>,
    pub tree_count: usize,
}

impl MultiplicityTable {
    pub fn m(&self, w: VertexSet) -> u64 {
        self.entries
            .binary_search_by(|e| e.set.cmp(&w))
            .map_or(0, |i| self.entries[i].m)
    }

    /// Entries with `m(W) > 0`.
    pub fn nonzero(&self) -> impl Iterator<Item = &MultiplicityEntry> {
        self.entries.iter().filter(|e| e.m > 0)
    }

    /// `Σ |W| m(W)`.
    pub fn degree_sum(&self) -> u64 {
        self.entries.iter().map(|e| e.set.len() as u64 * e.m).sum()
    }

    pub fn to_records(&self, g: &DiGraph) -> Vec<MultiplicityRecord> {
        self.entries
            .iter()
            .map(|e| MultiplicityRecord {
                w: e.set.iter().map(|v| g.label(v).to_string()).collect(),
                m: e.m,
                witnesses: e
                    .witnesses
                    .iter()
                    .map(|(&v, trees)| (g.label(v).to_string(), trees.clone()))
                    .collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityRecord {
    #[serde(rename = "W")]
    pub w: Vec<String>,
    pub m: u64,
    pub witnesses: BTreeMap<String, Vec<TreeId>>,
}

pub fn multiplicity_table(g: &DiGraph) -> Result<MultiplicityTable> {
    multiplicity_table_with(g, &Guards::default())
}

/// Explores every spanning tree and checks that `m(W, w)` does not depend
/// on `w` and that `Σ |W| m(W)` is the number of trees.
pub fn multiplicity_table_with(g: &DiGraph, guards: &Guards) -> Result<MultiplicityTable> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let subsets = g.strongly_connected_subsets(guards.subset_vertices)?;
    let trees = spanning::enumerate_spanning_trees_with_limit(g, guards.max_trees)?;
    table_from_counts(g, &subsets, multiplicity_counts(g, &trees)?)
}

fn table_from_counts(g: &DiGraph, subsets: &[VertexSet], mut counts: MultiplicityCounts) -> Result<MultiplicityTable> {
    let mut entries = Vec::with_capacity(subsets.len());
    for &set in subsets {
        let mut witnesses = BTreeMap::new();
        for v in set.iter() {
            witnesses.insert(v, counts.counts.remove(&(set, v)).unwrap_or_default());
        }
        let sizes: Vec<usize> = witnesses.values().map(Vec::len).collect();
        if sizes.iter().any(|&s| s != sizes[0]) {
            let detail: Vec<String> = witnesses.iter().map(|(v, t)| format!("{}: {}", g.label(*v), t.len())).collect();
            return Err(Error::MultiplicityMismatch(format!(
                "m({}, w) differs across w ({})",
                g.format_set(set),
                detail.join(", ")
            )));
        }
        entries.push(MultiplicityEntry { set, m: sizes[0] as u64, witnesses });
    }
    if let Some(((set, _), _)) = counts.counts.iter().next() {
        return Err(Error::Invariant(format!("ψ value {} is not strongly connected", g.format_set(*set))));
    }
    let table = MultiplicityTable { entries, tree_count: counts.tree_count };
    if table.degree_sum() != table.tree_count as u64 {
        return Err(Error::Invariant(format!(
            "degree identity fails: Σ|W|m(W) = {} but there are {} trees",
            table.degree_sum(),
            table.tree_count
        )));
    }
    Ok(table)
}

/// `l(X) = det(Q^X - I)` with every `x_e = -1`, where `Q^X` deletes the rows
/// and columns of `X`: the determinant on `V \ X` of `D - A - I`, with `D`
/// the out-degrees in `G` and `A` the adjacency matrix.
pub fn signed_weight(g: &DiGraph, x: VertexSet) -> BigInt {
    let rest: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| !x.contains(v)).collect();
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in rest.iter().enumerate() {
        pos[v] = i;
    }
    let mut m = SquareMatrix::<BigInt>::zeros(rest.len());
    for (i, &v) in rest.iter().enumerate() {
        m.set(i, i, BigInt::from(g.out_degree(v) as i64 - 1));
    }
    for e in g.edges() {
        if pos[e.source] != usize::MAX && pos[e.target] != usize::MAX {
            m.set(pos[e.source], pos[e.target], BigInt::from(-1));
        }
    }
    det_integer(&m)
}

/// `det(Γ_X - I)` with `Γ_X` the adjacency matrix of `G_X` at `x_e = -1`.
pub fn adjacency_signed_weight(g: &DiGraph, x: VertexSet) -> BigInt {
    let verts = x.to_vec();
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        pos[v] = i;
    }
    let mut m = SquareMatrix::<BigInt>::zeros(verts.len());
    for i in 0..verts.len() {
        m.set(i, i, BigInt::from(-1));
    }
    for e in g.edges() {
        if pos[e.source] != usize::MAX && pos[e.target] != usize::MAX {
            m.set(pos[e.source], pos[e.target], BigInt::from(-1));
        }
    }
    det_integer(&m)
}

/// `n(W) = Σ l(X)` over the `X` having `W` as a strongly connected
/// component, for every strongly connected `W` at once.
pub fn athanasiadis_table(g: &DiGraph, limit: usize) -> Result<BTreeMap<VertexSet, BigInt>> {
    let mut n: BTreeMap<VertexSet, BigInt> = g
        .strongly_connected_subsets(limit)?
        .into_iter()
        .map(|w| (w, BigInt::zero()))
        .collect();
    for bits in 1u64..1 << g.vertex_count() {
        let x = VertexSet::from_bits(bits);
        let l = signed_weight(g, x);
        if l.is_zero() {
            continue;
        }
        for w in g.scc_components(x) {
            *n.get_mut(&w).expect("components are strongly connected") += &l;
        }
    }
    Ok(n)
}

pub fn athanasiadis_multiplicity(g: &DiGraph, w: VertexSet, limit: usize) -> Result<BigInt> {
    if !g.is_strongly_connected_subset(w) {
        return Err(Error::SubsetNotStronglyConnected(g.format_set(w)));
    }
    let n = g.vertex_count();
    if n > limit || n >= 64 {
        return Err(Error::SubsetLimit { vertices: n, limit });
    }
    let mut total = BigInt::zero();
    for bits in 1u64..1 << n {
        let x = VertexSet::from_bits(bits);
        if w.is_subset(x) && g.scc_components(x).contains(&w) {
            total += signed_weight(g, x);
        }
    }
    Ok(total)
}

/// `n(W)` as a machine integer, failing on negative values.
pub fn to_count(n: &BigInt) -> Option<u64> {
    n.to_u64()
}
