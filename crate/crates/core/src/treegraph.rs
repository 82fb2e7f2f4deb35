//! The tree graph `TG`: spanning trees of `G` joined by the root move.
//!
//! For a tree `a` with root `r` and an edge `e = (r, t)` of `G`, the move
//! adds `e` and deletes the out-edge of `t`, giving a tree rooted at `t`.
//! The edge `a -> b` of `TG` projects to `e`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::digraph::{DiGraph, EdgeId, GraphFile, VertexId, VertexSet};
use crate::error::{Error, Result};
use crate::spanning::{self, SpanningTree, TreeRecord};
use crate::Guards;

pub type TreeId = usize;
pub type TreeEdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeEdge {
    pub id: TreeEdgeId,
    pub source: TreeId,
    pub target: TreeId,
    /// The edge of `G` this edge projects to.
    pub label: EdgeId,
}

#[derive(Clone, Debug)]
pub struct TreeGraph {
    base: DiGraph,
    trees: Vec<SpanningTree>,
    index: HashMap<Vec<EdgeId>, TreeId>,
    edges: Vec<TreeEdge>,
    out_edges: Vec<Vec<TreeEdgeId>>,
    in_edges: Vec<Vec<TreeEdgeId>>,
}

impl TreeGraph {
    pub fn build(g: &DiGraph) -> Result<TreeGraph> {
        Self::build_with(g, &Guards::default())
    }

    pub fn build_with(g: &DiGraph, guards: &Guards) -> Result<TreeGraph> {
        let trees = spanning::enumerate_spanning_trees_with_limit(g, guards.max_trees)?;
        if trees.is_empty() {
            return Err(Error::NoArborescence);
        }
        let edge_total: usize = trees.iter().map(|a| g.out_degree(a.root())).sum();
        if edge_total > guards.max_tree_graph_edges {
            return Err(Error::EdgeLimit { limit: guards.max_tree_graph_edges });
        }
        let index: HashMap<Vec<EdgeId>, TreeId> =
            trees.iter().enumerate().map(|(i, a)| (a.edges().to_vec(), i)).collect();
        let mut edges = Vec::with_capacity(edge_total);
        let mut out_edges = vec![Vec::new(); trees.len()];
        let mut in_edges = vec![Vec::new(); trees.len()];
        for (i, a) in trees.iter().enumerate() {
            for &e in g.out_edges(a.root()) {
                let key = moved_edges(g, a, e);
                let j = *index
                    .get(&key)
                    .ok_or_else(|| Error::Invariant(format!("move of tree {i} along edge {e} is not a tree")))?;
                let id = edges.len();
                edges.push(TreeEdge { id, source: i, target: j, label: e });
                out_edges[i].push(id);
                in_edges[j].push(id);
            }
        }
        Ok(TreeGraph {
            base: g.clone(),
            trees,
            index,
            edges,
            out_edges,
            in_edges,
        })
    }

    pub fn base(&self) -> &DiGraph {
        &self.base
    }

    pub fn trees(&self) -> &[SpanningTree] {
        &self.trees
    }

    pub fn tree(&self, id: TreeId) -> &SpanningTree {
        &self.trees[id]
    }

    pub fn tree_count(&self) -> usize {
        self.trees.len()
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn edge(&self, id: TreeEdgeId) -> &TreeEdge {
        &self.edges[id]
    }

    pub fn out_edges(&self, a: TreeId) -> &[TreeEdgeId] {
        &self.out_edges[a]
    }

    pub fn in_edges(&self, a: TreeId) -> &[TreeEdgeId] {
        &self.in_edges[a]
    }

    /// Projection of a vertex of `TG`.
    pub fn root(&self, a: TreeId) -> VertexId {
        self.trees[a].root()
    }

    /// Index of the tree with the given edge set.
    pub fn find_tree(&self, edges: &[EdgeId]) -> Option<TreeId> {
        let mut key = edges.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    pub fn tree_label(&self, a: TreeId) -> String {
        let t = &self.trees[a];
        let edges: Vec<String> = t.edges().iter().map(|e| e.to_string()).collect();
        format!("{}:[{}]", self.base.label(t.root()), edges.join(","))
    }

    /// `TG` as a plain graph on tree indices. Edge `i` of the result is
    /// tree-graph edge `i`.
    pub fn as_digraph(&self) -> DiGraph {
        let labels = (0..self.tree_count()).map(|a| self.tree_label(a)).collect();
        let pairs: Vec<_> = self.edges.iter().map(|e| (e.source, e.target)).collect();
        DiGraph::new(labels, &pairs).expect("tree graph is simple and loop-free")
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.as_digraph().is_strongly_connected()
    }

    /// The unique lift, starting at `start`, of a path of `G` given by its edges.
    pub fn lift_path(&self, path: &[EdgeId], start: TreeId) -> Result<Vec<TreeEdgeId>> {
        let mut at_vertex = self.root(start);
        let mut at_tree = start;
        let mut lift = Vec::with_capacity(path.len());
        for (step, &e) in path.iter().enumerate() {
            if e >= self.base.edge_count() {
                return Err(Error::InvalidPath(format!("step {step}: no edge {e}")));
            }
            let edge = self.base.edge(e);
            if edge.source != at_vertex {
                return Err(Error::InvalidPath(format!(
                    "step {step}: edge {e} does not leave vertex {at_vertex}"
                )));
            }
            let candidates: Vec<TreeEdgeId> = self.out_edges[at_tree]
                .iter()
                .copied()
                .filter(|&f| self.edges[f].label == e)
                .collect();
            if candidates.len() != 1 {
                return Err(Error::Invariant(format!(
                    "tree {at_tree} has {} out-edges above edge {e}",
                    candidates.len()
                )));
            }
            lift.push(candidates[0]);
            at_tree = self.edges[candidates[0]].target;
            at_vertex = edge.target;
        }
        Ok(lift)
    }

    /// Partition of the edges of `TG` into simple cycles, grouped by the
    /// simple cycle `C` of `G` they project to and the forest rooted in the
    /// vertices of `C` they carry.
    pub fn cycle_partition(&self) -> Result<Vec<LiftedCycle>> {
        let g = &self.base;
        let mut groups: BTreeMap<(Vec<EdgeId>, Vec<EdgeId>), Vec<TreeEdgeId>> = BTreeMap::new();
        for te in &self.edges {
            let a = &self.trees[te.source];
            let new = g.edge(te.label);
            let path = a.path_to_root(g, new.target);
            let mut cycle: Vec<EdgeId> = path.iter().filter_map(|&v| a.out_edge(v)).collect();
            cycle.push(te.label);
            cycle.sort_unstable();
            let on_cycle: VertexSet = path.iter().copied().collect();
            let forest: Vec<EdgeId> = a
                .edges()
                .iter()
                .copied()
                .filter(|&f| !on_cycle.contains(g.edge(f).source))
                .collect();
            groups.entry((cycle, forest)).or_default().push(te.id);
        }
        let mut out = Vec::with_capacity(groups.len());
        for ((cycle, forest), members) in groups {
            let by_source: HashMap<TreeId, TreeEdgeId> =
                members.iter().map(|&f| (self.edges[f].source, f)).collect();
            if by_source.len() != members.len() || members.len() != cycle.len() {
                return Err(Error::Invariant(format!("edges above cycle {cycle:?} do not form a simple cycle")));
            }
            let first = *members.iter().min().expect("groups are nonempty");
            let mut ordered = vec![first];
            let mut at = self.edges[first].target;
            while at != self.edges[first].source {
                let next = *by_source
                    .get(&at)
                    .ok_or_else(|| Error::Invariant(format!("edges above cycle {cycle:?} do not close up")))?;
                ordered.push(next);
                at = self.edges[next].target;
                if ordered.len() > members.len() {
                    return Err(Error::Invariant(format!("edges above cycle {cycle:?} do not close up")));
                }
            }
            if ordered.len() != members.len() {
                return Err(Error::Invariant(format!("edges above cycle {cycle:?} split into several cycles")));
            }
            let vertices: VertexSet = cycle.iter().map(|&e| g.edge(e).source).collect();
            out.push(LiftedCycle {
                base_cycle: ordered.iter().map(|&f| self.edges[f].label).collect(),
                vertices,
                forest,
                tree_edges: ordered,
            });
        }
        Ok(out)
    }

    /// Checks that the cycle partition covers every edge once and that the
    /// number of cycles above each simple cycle `C` of `G` equals the number
    /// of forests rooted in the vertex set of `C`.
    pub fn verify_cycle_partition(&self) -> Result<CyclePartitionReport> {
        let parts = self.cycle_partition()?;
        let mut seen = vec![0usize; self.edges.len()];
        for p in &parts {
            for &f in &p.tree_edges {
                seen[f] += 1;
            }
        }
        let covered_once = seen.iter().all(|&c| c == 1);
        let mut lifts: BTreeMap<Vec<EdgeId>, usize> = BTreeMap::new();
        for p in &parts {
            let mut key = p.base_cycle.clone();
            key.sort_unstable();
            *lifts.entry(key).or_default() += 1;
        }
        let mut cycles = Vec::new();
        let mut counts_match = true;
        for cycle in simple_cycles(&self.base) {
            let w: VertexSet = cycle.iter().map(|&e| self.base.edge(e).source).collect();
            let forests = spanning::enumerate_forests(&self.base, w)?.len();
            let lifted = lifts.remove(&cycle).unwrap_or(0);
            counts_match &= forests == lifted;
            cycles.push(CycleCount { cycle, lifts: lifted, forests });
        }
        counts_match &= lifts.is_empty();
        Ok(CyclePartitionReport {
            cycle_count: parts.len(),
            covered_once,
            counts_match,
            cycles,
        })
    }

    /// In- and out-degree of every tree against the out-degree of its root.
    pub fn check_eulerian(&self) -> EulerianReport {
        let violations: Vec<DegreeViolation> = (0..self.tree_count())
            .filter_map(|a| {
                let expected = self.base.out_degree(self.root(a));
                let (indeg, outdeg) = (self.in_edges[a].len(), self.out_edges[a].len());
                (indeg != expected || outdeg != expected).then_some(DegreeViolation {
                    tree: a,
                    indegree: indeg,
                    outdegree: outdeg,
                    expected,
                })
            })
            .collect();
        EulerianReport { eulerian: violations.is_empty(), violations }
    }

    pub fn to_file(&self) -> TreeGraphFile {
        TreeGraphFile {
            base: self.base.to_file(),
            trees: self.trees.iter().map(SpanningTree::to_record).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| TreeEdgeRecord { s: e.source, t: e.target, label: e.label })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("tree graph serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph TG {\n");
        for a in 0..self.tree_count() {
            let t = &self.trees[a];
            let edges: Vec<String> = t
                .edges()
                .iter()
                .map(|&e| {
                    let e = self.base.edge(e);
                    format!("{}>{}", self.base.label(e.source), self.base.label(e.target))
                })
                .collect();
            let _ = writeln!(
                out,
                "  t{a} [label=\"root {}\\n{}\"];",
                escape(self.base.label(t.root())),
                escape(&edges.join(" "))
            );
        }
        for e in &self.edges {
            let _ = writeln!(out, "  t{} -> t{} [label=\"x_{}\"];", e.source, e.target, e.label);
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Sorted edge set of the tree obtained from `a` by the move along `e`.
fn moved_edges(g: &DiGraph, a: &SpanningTree, e: EdgeId) -> Vec<EdgeId> {
    let dropped = a.out_edge(g.edge(e).target);
    let mut key: Vec<EdgeId> = a.edges().iter().copied().filter(|&f| Some(f) != dropped).collect();
    key.push(e);
    key.sort_unstable();
    key
}

/// Simple cycles of `g` as sorted edge-id lists, each listed once.
pub fn simple_cycles(g: &DiGraph) -> Vec<Vec<EdgeId>> {
    fn extend(g: &DiGraph, start: VertexId, at: VertexId, used: &mut Vec<bool>, path: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        for &e in g.out_edges(at) {
            let t = g.edge(e).target;
            if t == start {
                let mut c = path.clone();
                c.push(e);
                c.sort_unstable();
                out.push(c);
            } else if t > start && !used[t] {
                used[t] = true;
                path.push(e);
                extend(g, start, t, used, path, out);
                path.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..g.vertex_count() {
        let mut used = vec![false; g.vertex_count()];
        used[start] = true;
        extend(g, start, start, &mut used, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// One cycle of the partition of `TG`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedCycle {
    /// Edges of `G` in traversal order.
    pub base_cycle: Vec<EdgeId>,
    pub vertices: VertexSet,
    /// The forest rooted in `vertices` shared by every tree on the cycle.
    pub forest: Vec<EdgeId>,
    /// Edges of `TG` in traversal order.
    pub tree_edges: Vec<TreeEdgeId>,
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCount {
    pub cycle: Vec<EdgeId>,
    pub lifts: usize,
    pub forests: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePartitionReport {
    pub cycle_count: usize,
    pub covered_once: bool,
    pub counts_match: bool,
    pub cycles: Vec<CycleCount>,
}

impl CyclePartitionReport {
    pub fn ok(&self) -> bool {
        self.covered_once && self.counts_match
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeViolation {
    pub tree: TreeId,
    pub indegree: usize,
    pub outdegree: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianReport {
    pub eulerian: bool,
    pub violations: Vec<DegreeViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeEdgeRecord {
    pub s: TreeId,
    pub t: TreeId,
    pub label: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeGraphFile {
    pub base: GraphFile,
    pub trees: Vec<TreeRecord>,
    pub edges: Vec<TreeEdgeRecord>,
}
