//! Multigraphs, reduced to simple digraphs by putting a vertex in the middle
//! of every edge.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::Rat;
use crate::digraph::{DiGraph, EdgeId, GraphFile, VertexId};
use crate::error::{Error, Result};
use crate::operators::Weights;
use crate::spanning::enumerate_rooted_trees;

/// Directed multigraph; loops are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDiGraph {
    labels: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    dropped_loops: Vec<VertexId>,
}

impl MultiDiGraph {
    pub fn new(labels: Vec<String>, pairs: &[(VertexId, VertexId)]) -> Result<MultiDiGraph> {
        let n = labels.len();
        let mut edges = Vec::new();
        let mut dropped_loops = Vec::new();
        for &(s, t) in pairs {
            if s >= n || t >= n {
                return Err(Error::VertexOutOfRange(s.max(t)));
            }
            if s == t {
                dropped_loops.push(s);
            } else {
                edges.push((s, t));
            }
        }
        Ok(MultiDiGraph { labels, edges, dropped_loops })
    }

    pub fn with_vertex_count(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<MultiDiGraph> {
        MultiDiGraph::new((1..=n).map(|i| i.to_string()).collect(), pairs)
    }

    /// Reads the graph JSON format; `"multi"` may be true or absent.
    pub fn from_json(text: &str) -> Result<MultiDiGraph> {
        let file = GraphFile::parse(text)?;
        MultiDiGraph::new(file.vertices.clone(), &file.pairs())
    }

    pub fn to_file(&self) -> GraphFile {
        let mut file = DiGraph::new(self.labels.clone(), &[]).expect("no edges").to_file();
        file.edges = self.edges.iter().map(|&(s, t)| crate::digraph::EdgeRecord { s, t }).collect();
        file.multi = Some(true);
        file
    }

    /// Each ordered pair of distinct vertices gets `0..=max_multiplicity`
    /// parallel edges, uniformly.
    pub fn random<R: Rng>(rng: &mut R, n: usize, max_multiplicity: usize) -> MultiDiGraph {
        let mut pairs = Vec::new();
        for s in 0..n {
            for t in (0..n).filter(|&t| t != s) {
                for _ in 0..rng.random_range(0..=max_multiplicity) {
                    pairs.push((s, t));
                }
            }
        }
        MultiDiGraph::with_vertex_count(n, &pairs).expect("vertices in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dropped_loops(&self) -> &[VertexId] {
        &self.dropped_loops
    }

    pub fn out_edges(&self, v: VertexId) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.edges[e].0 == v).collect()
    }

    /// Spanning trees rooted at `root`, each as the sorted list of its edges.
    /// Brute force over one out-edge per non-root vertex.
    pub fn rooted_trees(&self, root: VertexId, limit: usize) -> Result<Vec<Vec<EdgeId>>> {
        let n = self.vertex_count();
        if root >= n {
            return Err(Error::VertexOutOfRange(root));
        }
        let choices: Vec<Vec<EdgeId>> = (0..n).map(|v| if v == root { vec![] } else { self.out_edges(v) }).collect();
        let mut out = Vec::new();
        let mut pick = vec![usize::MAX; n];
        self.extend(root, 0, &choices, &mut pick, &mut out, limit)?;
        Ok(out)
    }

    fn extend(
        &self,
        root: VertexId,
        v: VertexId,
        choices: &[Vec<EdgeId>],
        pick: &mut Vec<EdgeId>,
        out: &mut Vec<Vec<EdgeId>>,
        limit: usize,
    ) -> Result<()> {
        let n = self.vertex_count();
        if v == n {
            if (0..n).all(|u| self.reaches_root(root, u, pick)) {
                if out.len() == limit {
                    return Err(Error::TreeLimit { limit });
                }
                let mut edges: Vec<EdgeId> = pick.iter().copied().filter(|&e| e != usize::MAX).collect();
                edges.sort_unstable();
                out.push(edges);
            }
            return Ok(());
        }
        if v == root {
            return self.extend(root, v + 1, choices, pick, out, limit);
        }
        for &e in &choices[v] {
            pick[v] = e;
            self.extend(root, v + 1, choices, pick, out, limit)?;
        }
        pick[v] = usize::MAX;
        Ok(())
    }

    fn reaches_root(&self, root: VertexId, mut u: VertexId, pick: &[EdgeId]) -> bool {
        for _ in 0..self.vertex_count() {
            if u == root {
                return true;
            }
            u = self.edges[pick[u]].1;
        }
        u == root
    }

    /// Inserts a vertex in the middle of every edge.
    pub fn subdivide(&self) -> Subdivision {
        let n = self.vertex_count();
        let mut labels = self.labels.clone();
        let mut pairs = Vec::with_capacity(2 * self.edges.len());
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            let mid = n + e;
            labels.push(format!("{}>{}#{}", self.labels[s], self.labels[t], e));
            pairs.push((s, mid));
            pairs.push((mid, t));
        }
        let simple = DiGraph::new(labels, &pairs).expect("subdivision is simple");
        let edge_map = (0..self.edges.len())
            .map(|e| Midpoint { vertex: n + e, in_edge: 2 * e, out_edge: 2 * e + 1 })
            .collect();
        Subdivision { simple, edge_map, original_vertices: n }
    }
}

/// The vertex placed on an edge and the two halves of that edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Midpoint {
    pub vertex: VertexId,
    pub in_edge: EdgeId,
    pub out_edge: EdgeId,
}

/// The subdivided graph: original vertices first, then one midpoint per edge.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub simple: DiGraph,
    pub edge_map: Vec<Midpoint>,
    pub original_vertices: usize,
}

impl Subdivision {
    /// Edge weights on the subdivision: the in-half of `e` carries `x_e`,
    /// the out-half carries 1. Potentials of midpoints are 0.
    pub fn lift_weights(&self, x: &[Rat], y: &[Rat]) -> Weights {
        let mut wx = vec![Rat::one(); self.simple.edge_count()];
        for (e, m) in self.edge_map.iter().enumerate() {
            wx[m.in_edge] = x[e].clone();
        }
        let mut wy = y.to_vec();
        wy.resize(self.simple.vertex_count(), Rat::zero());
        Weights { x: wx, y: wy }
    }

    /// Image of a tree of the multigraph: both halves of every tree edge, the
    /// out-half of every other edge. With `midpoint_root = Some(e)` the
    /// tree is re-rooted at the midpoint of `e`, which keeps only its in-half.
    pub fn lift_tree(&self, tree: &[EdgeId], midpoint_root: Option<EdgeId>) -> BTreeSet<EdgeId> {
        let on_tree: BTreeSet<EdgeId> = tree.iter().copied().collect();
        let mut out = BTreeSet::new();
        for (e, m) in self.edge_map.iter().enumerate() {
            if on_tree.contains(&e) {
                out.insert(m.in_edge);
                out.insert(m.out_edge);
            } else if midpoint_root == Some(e) {
                out.insert(m.in_edge);
            } else {
                out.insert(m.out_edge);
            }
        }
        out
    }
}

/// Tree counts on both sides of the subdivision for one root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootTransfer {
    pub root: String,
    pub original: usize,
    pub subdivided: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub roots: Vec<RootTransfer>,
    pub holds: bool,
}

/// Checks, for the original vertex `v` and for every midpoint on an edge
/// leaving `v`, that the explicit image of the trees of the multigraph
/// rooted at `v` is exactly the set of trees of the subdivision.
pub fn transfer_trees(mg: &MultiDiGraph, sub: &Subdivision, v: VertexId, limit: usize) -> Result<TransferReport> {
    if v >= mg.vertex_count() {
        return Err(Error::VertexOutOfRange(v));
    }
    let trees = mg.rooted_trees(v, limit)?;
    let mut roots = Vec::new();
    let midpoints = mg.out_edges(v).into_iter().map(Some);
    for midpoint_root in std::iter::once(None).chain(midpoints) {
        let root = midpoint_root.map_or(v, |e| sub.edge_map[e].vertex);
        let images: BTreeSet<BTreeSet<EdgeId>> = trees.iter().map(|t| sub.lift_tree(t, midpoint_root)).collect();
        let listed: BTreeSet<BTreeSet<EdgeId>> = enumerate_rooted_trees(&sub.simple, root, limit)?
            .iter()
            .map(|t| t.edges().iter().copied().collect())
            .collect();
        roots.push(RootTransfer {
            root: sub.simple.label(root).to_string(),
            original: trees.len(),
            subdivided: listed.len(),
            bijective: images.len() == trees.len() && images == listed,
        });
    }
    let holds = roots.iter().all(|r| r.bijective && r.original == r.subdivided);
    Ok(TransferReport { roots, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::spanning::DEFAULT_TREE_LIMIT;

    fn double_edge() -> MultiDiGraph {
        MultiDiGraph::with_vertex_count(2, &[(0, 1), (0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn subdivision_counts() {
        let sub = double_edge().subdivide();
        assert_eq!(sub.simple.vertex_count(), 5);
        assert_eq!(sub.simple.edge_count(), 6);
        assert_eq!(sub.edge_map[1], Midpoint { vertex: 3, in_edge: 2, out_edge: 3 });
        let simple = MultiDiGraph::with_vertex_count(3, &[(0, 1), (1, 2), (2, 0)]).unwrap().subdivide();
        assert_eq!((simple.simple.vertex_count(), simple.simple.edge_count()), (6, 6));
    }

    #[test]
    fn loops_dropped() {
        let mg = MultiDiGraph::with_vertex_count(2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(mg.edge_count(), 2);
        assert_eq!(mg.dropped_loops(), &[0]);
        assert_eq!(mg.subdivide().simple.vertex_count(), 4);
    }

    #[test]
    fn transfer_examples() {
        let mg = double_edge();
        let sub = mg.subdivide();
        let r = transfer_trees(&mg, &sub, 0, DEFAULT_TREE_LIMIT).unwrap();
        assert!(r.holds);
        assert_eq!(r.roots[0].original, 1);
        let r = transfer_trees(&mg, &sub, 1, DEFAULT_TREE_LIMIT).unwrap();
        assert!(r.holds);
        assert_eq!(r.roots[0].original, 2);
        assert_eq!(r.roots.len(), 2);
        assert_eq!(r.roots[1].subdivided, 2);
        let cycle = MultiDiGraph::with_vertex_count(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = transfer_trees(&cycle, &cycle.subdivide(), 0, DEFAULT_TREE_LIMIT).unwrap();
        assert!(r.holds);
        assert_eq!(r.roots[0].subdivided, 1);
    }

    #[test]
    fn weights_carry_over() {
        let mg = double_edge();
        let sub = mg.subdivide();
        let x = vec![rat(3), rat(5), rat(7)];
        let w = sub.lift_weights(&x, &[rat(1), rat(1)]);
        for tree in mg.rooted_trees(1, 10).unwrap() {
            let original: Rat = tree.iter().map(|&e| x[e].clone()).product();
            let lifted: Rat = sub.lift_tree(&tree, None).iter().map(|&e| w.x[e].clone()).product();
            assert_eq!(original, lifted);
        }
        assert_eq!(w.y.len(), 5);
    }

    #[test]
    fn json_round_trip() {
        let mg = double_edge();
        let text = serde_json::to_string(&mg.to_file()).unwrap();
        assert!(text.contains("\"multi\":true"));
        assert_eq!(MultiDiGraph::from_json(&text).unwrap(), mg);
        assert!(DiGraph::from_json(&text).is_err());
    }
}
