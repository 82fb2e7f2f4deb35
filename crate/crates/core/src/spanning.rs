//! Oriented spanning trees and forests, enumerated exhaustively.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, MultiPoly, Rat, Var};
use crate::digraph::{DiGraph, EdgeId, VertexId, VertexSet};
use crate::error::{Error, Result};

/// Default limit on the number of enumerated structures.
pub const DEFAULT_TREE_LIMIT: usize = 1_000_000;

/// Oriented forest rooted in a vertex set: the roots have no out-edge, every
/// other vertex exactly one, and there is no cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Forest {
    roots: VertexSet,
    edges: Vec<EdgeId>,
    out_edge: Vec<Option<EdgeId>>,
}

/// Oriented spanning tree: a forest with a single root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    root: VertexId,
    forest: Forest,
}

impl Forest {
    /// Validates a set of edges as a forest of `g` rooted in `roots`.
    pub fn from_edges(g: &DiGraph, roots: VertexSet, edges: &[EdgeId]) -> Result<Forest> {
        let n = g.vertex_count();
        if roots.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut out_edge = vec![None; n];
        for &e in edges {
            if e >= g.edge_count() {
                return Err(Error::NotSpanningTree(format!("edge {e} is not an edge of the graph")));
            }
            let s = g.edge(e).source;
            if roots.contains(s) {
                return Err(Error::NotSpanningTree(format!("root {s} has an out-edge")));
            }
            if out_edge[s].replace(e).is_some() {
                return Err(Error::NotSpanningTree(format!("vertex {s} has two out-edges")));
            }
        }
        for (v, out) in out_edge.iter().enumerate() {
            if !roots.contains(v) && out.is_none() {
                return Err(Error::NotSpanningTree(format!("vertex {v} has no out-edge")));
            }
        }
        for v in 0..n {
            let mut u = v;
            for _ in 0..=n {
                match out_edge[u] {
                    Some(e) => u = g.edge(e).target,
                    None => break,
                }
            }
            if out_edge[u].is_some() {
                return Err(Error::NotSpanningTree(format!("cycle through vertex {v}")));
            }
        }
        Ok(Forest::from_out_map(roots, out_edge))
    }

    fn from_out_map(roots: VertexSet, out_edge: Vec<Option<EdgeId>>) -> Forest {
        let mut edges: Vec<EdgeId> = out_edge.iter().flatten().copied().collect();
        edges.sort_unstable();
        Forest { roots, edges, out_edge }
    }

    pub fn roots(&self) -> VertexSet {
        self.roots
    }

    /// Edge ids, ascending.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn out_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.out_edge[v]
    }

    pub fn out_map(&self) -> &[Option<EdgeId>] {
        &self.out_edge
    }

    pub fn contains_edge(&self, g: &DiGraph, e: EdgeId) -> bool {
        self.out_edge[g.edge(e).source] == Some(e)
    }

    /// `π_f` with edge `e` mapped to the variable `var(e)`.
    pub fn weight_with(&self, var: impl Fn(EdgeId) -> Var) -> Monomial {
        Monomial::product_of(self.edges.iter().map(|&e| var(e)))
    }

    /// `π_f` in the variables `x_e`.
    pub fn weight(&self) -> Monomial {
        self.weight_with(Var::x)
    }

    /// `π_f` at edge values `x`, indexed by edge id.
    pub fn weight_at(&self, x: &[Rat]) -> Rat {
        self.edges.iter().fold(Rat::one(), |acc, &e| acc * &x[e])
    }

    pub fn to_record(&self) -> ForestRecord {
        ForestRecord {
            roots: self.roots.to_vec(),
            edges: self.edges.clone(),
        }
    }
}

impl SpanningTree {
    pub fn from_edges(g: &DiGraph, root: VertexId, edges: &[EdgeId]) -> Result<SpanningTree> {
        if root >= g.vertex_count() {
            return Err(Error::VertexOutOfRange(root));
        }
        let forest = Forest::from_edges(g, VertexSet::singleton(root), edges)?;
        Ok(SpanningTree { root, forest })
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn edges(&self) -> &[EdgeId] {
        self.forest.edges()
    }

    pub fn out_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.forest.out_edge(v)
    }

    pub fn out_map(&self) -> &[Option<EdgeId>] {
        self.forest.out_map()
    }

    pub fn contains_edge(&self, g: &DiGraph, e: EdgeId) -> bool {
        self.forest.contains_edge(g, e)
    }

    pub fn as_forest(&self) -> &Forest {
        &self.forest
    }

    pub fn weight_with(&self, var: impl Fn(EdgeId) -> Var) -> Monomial {
        self.forest.weight_with(var)
    }

    /// `π_a` in the variables `x_e`.
    pub fn weight(&self) -> Monomial {
        self.forest.weight()
    }

    pub fn weight_at(&self, x: &[Rat]) -> Rat {
        self.forest.weight_at(x)
    }

    /// Vertices on the tree path from `v` to the root, both included.
    pub fn path_to_root(&self, g: &DiGraph, v: VertexId) -> Vec<VertexId> {
        let mut path = vec![v];
        let mut u = v;
        while let Some(e) = self.out_edge(u) {
            u = g.edge(e).target;
            path.push(u);
        }
        path
    }

    pub fn to_record(&self) -> TreeRecord {
        TreeRecord {
            root: self.root,
            edges: self.edges().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRecord {
    pub root: VertexId,
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestRecord {
    pub roots: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// Depth-first search over out-edge choices of the non-root vertices,
/// rejecting a choice as soon as it closes a cycle.
fn enumerate_out_maps(g: &DiGraph, roots: VertexSet, limit: usize) -> Result<Vec<Vec<Option<EdgeId>>>> {
    let free: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| !roots.contains(v)).collect();
    let mut out = Vec::new();
    let mut current = vec![None; g.vertex_count()];
    search(g, &free, 0, &mut current, &mut out, limit)?;
    Ok(out)
}

fn search(
    g: &DiGraph,
    free: &[VertexId],
    depth: usize,
    current: &mut Vec<Option<EdgeId>>,
    out: &mut Vec<Vec<Option<EdgeId>>>,
    limit: usize,
) -> Result<()> {
    let Some(&v) = free.get(depth) else {
        if out.len() >= limit {
            return Err(Error::TreeLimit { limit });
        }
        out.push(current.clone());
        return Ok(());
    };
    for &e in g.out_edges(v) {
        let mut u = g.edge(e).target;
        while u != v {
            match current[u] {
                Some(f) => u = g.edge(f).target,
                None => break,
            }
        }
        if u == v {
            continue;
        }
        current[v] = Some(e);
        search(g, free, depth + 1, current, out, limit)?;
        current[v] = None;
    }
    Ok(())
}

/// Forests rooted in `w`, ordered by sorted edge-id tuple.
pub fn enumerate_forests_with_limit(g: &DiGraph, w: VertexSet, limit: usize) -> Result<Vec<Forest>> {
    if w.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(v) = w.iter().find(|&v| v >= g.vertex_count()) {
        return Err(Error::VertexOutOfRange(v));
    }
    let mut forests: Vec<Forest> = enumerate_out_maps(g, w, limit)?
        .into_iter()
        .map(|m| Forest::from_out_map(w, m))
        .collect();
    forests.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(forests)
}

pub fn enumerate_forests(g: &DiGraph, w: VertexSet) -> Result<Vec<Forest>> {
    enumerate_forests_with_limit(g, w, DEFAULT_TREE_LIMIT)
}

/// Spanning trees rooted at `root`, ordered by sorted edge-id tuple.
pub fn enumerate_rooted_trees(g: &DiGraph, root: VertexId, limit: usize) -> Result<Vec<SpanningTree>> {
    Ok(enumerate_forests_with_limit(g, VertexSet::singleton(root), limit)?
        .into_iter()
        .map(|forest| SpanningTree { root, forest })
        .collect())
}

/// All spanning trees, ordered by root and then by sorted edge-id tuple.
pub fn enumerate_spanning_trees_with_limit(g: &DiGraph, limit: usize) -> Result<Vec<SpanningTree>> {
    let mut trees = Vec::new();
    for root in 0..g.vertex_count() {
        let remaining = limit - trees.len();
        trees.extend(enumerate_rooted_trees(g, root, remaining).map_err(|e| match e {
            Error::TreeLimit { .. } => Error::TreeLimit { limit },
            other => other,
        })?);
    }
    Ok(trees)
}

pub fn enumerate_spanning_trees(g: &DiGraph) -> Result<Vec<SpanningTree>> {
    enumerate_spanning_trees_with_limit(g, DEFAULT_TREE_LIMIT)
}

/// Sum of the monomials.
pub fn generating_polynomial<I: IntoIterator<Item = Monomial>>(weights: I) -> MultiPoly {
    let mut p = MultiPoly::default();
    for m in weights {
        p.add_term(m, Rat::one());
    }
    p
}

/// `Ψ_W`, the generating polynomial of forests rooted in `w`.
pub fn forest_polynomial(g: &DiGraph, w: VertexSet) -> Result<MultiPoly> {
    Ok(generating_polynomial(enumerate_forests(g, w)?.iter().map(Forest::weight)))
}

/// `F_G`, the generating polynomial of all spanning trees.
pub fn tree_polynomial(g: &DiGraph) -> Result<MultiPoly> {
    Ok(generating_polynomial(enumerate_spanning_trees(g)?.iter().map(SpanningTree::weight)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::all_graphs;

    fn cycle3() -> DiGraph {
        DiGraph::with_vertex_count(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn triangle() -> DiGraph {
        DiGraph::with_vertex_count(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap()
    }

    fn complete(n: usize) -> DiGraph {
        let pairs: Vec<_> = (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t))).collect();
        DiGraph::with_vertex_count(n, &pairs).unwrap()
    }

    fn bidirected_cycle(n: usize) -> DiGraph {
        let pairs: Vec<_> = (0..n).flat_map(|i| [(i, (i + 1) % n), ((i + 1) % n, i)]).collect();
        DiGraph::with_vertex_count(n, &pairs).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn tree_counts() {
        let trees = enumerate_spanning_trees(&cycle3()).unwrap();
        assert_eq!(trees.len(), 3);
        assert_eq!(trees.iter().map(|t| t.root()).collect::<Vec<_>>(), vec![0, 1, 2]);
        for n in 3..=6 {
            assert_eq!(enumerate_spanning_trees(&bidirected_cycle(n)).unwrap().len(), n * n);
        }
        assert_eq!(enumerate_spanning_trees(&complete(4)).unwrap().len(), 64);
    }

    #[test]
    fn forest_examples() {
        let g = cycle3();
        let all = enumerate_forests(&g, g.all_vertices()).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].edges().is_empty());
        assert!(all[0].weight().is_one());
        let f = enumerate_forests(&g, set(&[0])).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].edges(), &[1, 2]);
        assert_eq!(f[0].weight(), Monomial::product_of([Var::x(1), Var::x(2)]));
        assert_eq!(enumerate_forests(&triangle(), set(&[0])).unwrap().len(), 3);
        assert_eq!(enumerate_forests(&g, VertexSet::empty()), Err(Error::EmptySubset));
    }

    #[test]
    fn generating_polynomial_examples() {
        let f = tree_polynomial(&cycle3()).unwrap();
        let expected = MultiPoly::monomial(Monomial::product_of([Var::x(0), Var::x(1)]), Rat::one())
            + MultiPoly::monomial(Monomial::product_of([Var::x(1), Var::x(2)]), Rat::one())
            + MultiPoly::monomial(Monomial::product_of([Var::x(2), Var::x(0)]), Rat::one());
        assert_eq!(f, expected);
        let g = cycle3();
        assert_eq!(forest_polynomial(&g, g.all_vertices()).unwrap(), MultiPoly::constant(Rat::one()));
        let two = DiGraph::with_vertex_count(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(tree_polynomial(&two).unwrap(), MultiPoly::var(Var::x(0)) + MultiPoly::var(Var::x(1)));
    }

    #[test]
    fn limit_is_enforced() {
        assert_eq!(
            enumerate_spanning_trees_with_limit(&complete(4), 10),
            Err(Error::TreeLimit { limit: 10 })
        );
        assert_eq!(enumerate_spanning_trees_with_limit(&complete(4), 64).unwrap().len(), 64);
    }

    #[test]
    fn validation() {
        let g = cycle3();
        assert!(SpanningTree::from_edges(&g, 0, &[1, 2]).is_ok());
        assert!(SpanningTree::from_edges(&g, 0, &[0, 1]).is_err());
        assert!(SpanningTree::from_edges(&g, 0, &[1]).is_err());
        let t = triangle();
        let two_cycle = [t.find_edge(1, 2).unwrap(), t.find_edge(2, 1).unwrap()];
        assert!(SpanningTree::from_edges(&t, 0, &two_cycle).is_err());
    }

    /// Brute force over all subsets of edges, independent of the search.
    fn brute_forest_count(g: &DiGraph, w: VertexSet) -> usize {
        (0u64..1 << g.edge_count())
            .filter(|&mask| {
                let edges: Vec<_> = (0..g.edge_count()).filter(|e| mask >> e & 1 == 1).collect();
                Forest::from_edges(g, w, &edges).is_ok()
            })
            .count()
    }

    #[test]
    fn enumeration_matches_edge_subset_brute_force() {
        for g in all_graphs(3) {
            for mask in 1u64..8 {
                let w = VertexSet::from_bits(mask);
                assert_eq!(enumerate_forests(&g, w).unwrap().len(), brute_forest_count(&g, w));
            }
        }
    }

    #[test]
    fn per_root_counts_sum_to_total() {
        let g = complete(4);
        let total: usize = (0..4).map(|r| enumerate_rooted_trees(&g, r, DEFAULT_TREE_LIMIT).unwrap().len()).sum();
        assert_eq!(total, enumerate_spanning_trees(&g).unwrap().len());
    }

    #[test]
    fn canonical_order() {
        let trees = enumerate_spanning_trees(&complete(4)).unwrap();
        for pair in trees.windows(2) {
            let a = (pair[0].root(), pair[0].edges());
            let b = (pair[1].root(), pair[1].edges());
            assert!(a < b);
        }
    }

    #[test]
    fn json_records() {
        let t = &enumerate_spanning_trees(&cycle3()).unwrap()[0];
        let json = serde_json::to_string(&t.to_record()).unwrap();
        assert_eq!(json, r#"{"root":0,"edges":[1,2]}"#);
    }
}
