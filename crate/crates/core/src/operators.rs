//! Laplacian, Schrödinger and adjacency operators on `G` and their lifts to
//! the tree graph, symbolic or at an evaluation point.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{det_exact, Assignment, MultiPoly, Rat, Ring, SquareMatrix, Var};
use crate::digraph::{DiGraph, VertexId, VertexSet};
use crate::error::{Error, Result};
use crate::spanning;
use crate::treegraph::{TreeGraph, TreeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    /// `Q`: `x_e` off the diagonal, minus the out-weight on it.
    Laplacian,
    /// `L = Q + diag(y)`.
    Schrodinger,
    /// `L` with `y_v` replaced by the out-weight of `v`.
    Adjacency,
}

/// Row and column label of an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Vertex(VertexId),
    Tree(TreeId),
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Vertex(v) => write!(f, "v{v}"),
            Label::Tree(a) => write!(f, "t{a}"),
        }
    }
}

/// Square matrix whose rows and columns carry the same distinct labels.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledMatrix<T> {
    labels: Vec<Label>,
    matrix: SquareMatrix<T>,
}

impl<T: Clone> LabeledMatrix<T> {
    pub fn new(labels: Vec<Label>, matrix: SquareMatrix<T>) -> Self {
        assert_eq!(labels.len(), matrix.dim(), "one label per row");
        LabeledMatrix { labels, matrix }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn matrix(&self) -> &SquareMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> SquareMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn positions(&self, labels: &[Label]) -> Result<Vec<bool>> {
        let index: HashMap<Label, usize> = self.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut mark = vec![false; self.labels.len()];
        for l in labels {
            let i = index.get(l).ok_or_else(|| Error::LabelNotPresent(l.to_string()))?;
            mark[*i] = true;
        }
        Ok(mark)
    }

    /// Principal submatrix on `keep`, in the original label order.
    pub fn restrict(&self, keep: &[Label]) -> Result<Self> {
        let mark = self.positions(keep)?;
        Ok(self.select(|i| mark[i]))
    }

    /// Principal submatrix without the rows and columns of `drop`.
    pub fn delete(&self, drop: &[Label]) -> Result<Self> {
        let mark = self.positions(drop)?;
        Ok(self.select(|i| !mark[i]))
    }

    fn select(&self, pick: impl Fn(usize) -> bool) -> Self {
        let idx: Vec<usize> = (0..self.labels.len()).filter(|&i| pick(i)).collect();
        LabeledMatrix {
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
            matrix: self.matrix.principal(&idx),
        }
    }

    /// `L_W` for a vertex-labelled operator.
    pub fn restrict_vertices(&self, w: VertexSet) -> Result<Self> {
        self.restrict(&w.iter().map(Label::Vertex).collect::<Vec<_>>())
    }

    /// `Q^W` for a vertex-labelled operator.
    pub fn delete_vertices(&self, w: VertexSet) -> Result<Self> {
        self.delete(&w.iter().map(Label::Vertex).collect::<Vec<_>>())
    }
}

impl<T: Clone + std::fmt::Display> LabeledMatrix<T> {
    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord {
            labels: self.labels.iter().map(Label::to_string).collect(),
            rows: self.matrix.rows().map(|r| r.iter().map(T::to_string).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixRecord {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Edge values `x_e` and vertex values `y_v` at an evaluation point.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights {
    pub x: Vec<Rat>,
    pub y: Vec<Rat>,
}

impl Weights {
    /// Reads `x_e` for every edge and `y_v` for every vertex.
    pub fn from_assignment(g: &DiGraph, asg: &Assignment) -> Result<Weights> {
        let get = |v: Var| asg.get(v).cloned().ok_or_else(|| Error::MissingVariable(v.to_string()));
        Ok(Weights {
            x: (0..g.edge_count()).map(|e| get(Var::x(e))).collect::<Result<_>>()?,
            y: (0..g.vertex_count()).map(|v| get(Var::y(v))).collect::<Result<_>>()?,
        })
    }

    /// Reads `x_e` only; the potentials are set to zero.
    pub fn edges_from_assignment(g: &DiGraph, asg: &Assignment) -> Result<Weights> {
        let x = (0..g.edge_count())
            .map(|e| asg.get(Var::x(e)).cloned().ok_or_else(|| Error::MissingVariable(Var::x(e).to_string())))
            .collect::<Result<_>>()?;
        Ok(Weights { x, y: vec![Rat::zero(); g.vertex_count()] })
    }

    pub fn unit(g: &DiGraph) -> Weights {
        Weights {
            x: vec![Rat::one(); g.edge_count()],
            y: vec![Rat::one(); g.vertex_count()],
        }
    }

    /// The substitution `y_v := sum of x_e over edges leaving v`.
    pub fn adjacency(&self, g: &DiGraph) -> Weights {
        Weights {
            x: self.x.clone(),
            y: (0..g.vertex_count()).map(|v| out_weight(g, &self.x, v)).collect(),
        }
    }

    pub fn to_assignment(&self) -> Assignment {
        let mut asg = Assignment::new();
        for (e, v) in self.x.iter().enumerate() {
            asg.set(Var::x(e), v.clone());
        }
        for (v, val) in self.y.iter().enumerate() {
            asg.set(Var::y(v), val.clone());
        }
        asg
    }
}

fn out_weight(g: &DiGraph, x: &[Rat], v: VertexId) -> Rat {
    g.out_edges(v).iter().fold(Rat::zero(), |acc, &e| acc + &x[e])
}

/// Variables of `L`: every `x_e`, then every `y_v`.
pub fn operator_variables(g: &DiGraph) -> Vec<Var> {
    (0..g.edge_count())
        .map(Var::x)
        .chain((0..g.vertex_count()).map(Var::y))
        .collect()
}

/// Laplacian of the weighted arcs, plus the potential on the diagonal.
fn assemble<T: Ring>(n: usize, arcs: impl IntoIterator<Item = (usize, usize, T)>, potential: Option<Vec<T>>) -> SquareMatrix<T> {
    let mut m: SquareMatrix<T> = SquareMatrix::zeros(n);
    for (s, t, w) in arcs {
        let off = m.get(s, t).clone() + w.clone();
        m.set(s, t, off);
        let diag = m.get(s, s).clone() - w;
        m.set(s, s, diag);
    }
    if let Some(p) = potential {
        for (i, y) in p.into_iter().enumerate() {
            let d = m.get(i, i).clone() + y;
            m.set(i, i, d);
        }
    }
    m
}

fn vertex_labels(g: &DiGraph) -> Vec<Label> {
    (0..g.vertex_count()).map(Label::Vertex).collect()
}

/// Replaces each `y_v` by the out-weight polynomial of `v`.
fn adjacency_substitution(m: &SquareMatrix<MultiPoly>, outs: &[MultiPoly]) -> SquareMatrix<MultiPoly> {
    m.map(|p| {
        outs.iter()
            .enumerate()
            .fold(p.clone(), |acc, (v, out)| acc.substitute(Var::y(v), out))
    })
}

fn symbolic_out_weights(g: &DiGraph) -> Vec<MultiPoly> {
    (0..g.vertex_count())
        .map(|v| {
            g.out_edges(v)
                .iter()
                .fold(MultiPoly::zero(), |acc, &e| acc + MultiPoly::var(Var::x(e)))
        })
        .collect()
}

/// `Q`, `L` or `M` of `G` in the variables `x_e`, `y_v`.
pub fn build_operator(g: &DiGraph, kind: OperatorKind) -> LabeledMatrix<MultiPoly> {
    let arcs = g.edges().iter().map(|e| (e.source, e.target, MultiPoly::var(Var::x(e.id))));
    let potential = (kind != OperatorKind::Laplacian).then(|| (0..g.vertex_count()).map(|v| MultiPoly::var(Var::y(v))).collect());
    let mut m = assemble(g.vertex_count(), arcs, potential);
    if kind == OperatorKind::Adjacency {
        m = adjacency_substitution(&m, &symbolic_out_weights(g));
    }
    LabeledMatrix::new(vertex_labels(g), m)
}

/// `Q`, `L` or `M` of `G` at the given values.
pub fn build_operator_at(g: &DiGraph, kind: OperatorKind, w: &Weights) -> LabeledMatrix<Rat> {
    let w = match kind {
        OperatorKind::Adjacency => w.adjacency(g),
        _ => w.clone(),
    };
    let arcs = g.edges().iter().map(|e| (e.source, e.target, w.x[e.id].clone()));
    let potential = (kind != OperatorKind::Laplacian).then(|| w.y.clone());
    LabeledMatrix::new(vertex_labels(g), assemble(g.vertex_count(), arcs, potential))
}

fn lifted_guard(tg: &TreeGraph, limit: usize) -> Result<()> {
    if tg.tree_count() > limit {
        return Err(Error::DimensionGuard { dim: tg.tree_count(), limit });
    }
    Ok(())
}

fn tree_labels(tg: &TreeGraph) -> Vec<Label> {
    (0..tg.tree_count()).map(Label::Tree).collect()
}

/// Lifted `𝒬`, `ℒ` or `ℳ`: edge `a -> b` of `TG` weighted by `x_{p(ab)}`,
/// potential `y_{root(a)}` at `a`.
pub fn build_lifted_operator(tg: &TreeGraph, kind: OperatorKind, limit: usize) -> Result<LabeledMatrix<MultiPoly>> {
    lifted_guard(tg, limit)?;
    let arcs = tg.edges().iter().map(|e| (e.source, e.target, MultiPoly::var(Var::x(e.label))));
    let potential = (kind != OperatorKind::Laplacian)
        .then(|| (0..tg.tree_count()).map(|a| MultiPoly::var(Var::y(tg.root(a)))).collect());
    let mut m = assemble(tg.tree_count(), arcs, potential);
    if kind == OperatorKind::Adjacency {
        m = adjacency_substitution(&m, &symbolic_out_weights(tg.base()));
    }
    Ok(LabeledMatrix::new(tree_labels(tg), m))
}

pub fn build_lifted_operator_at(tg: &TreeGraph, kind: OperatorKind, w: &Weights, limit: usize) -> Result<LabeledMatrix<Rat>> {
    lifted_guard(tg, limit)?;
    let w = match kind {
        OperatorKind::Adjacency => w.adjacency(tg.base()),
        _ => w.clone(),
    };
    let arcs = tg.edges().iter().map(|e| (e.source, e.target, w.x[e.label].clone()));
    let potential = (kind != OperatorKind::Laplacian).then(|| (0..tg.tree_count()).map(|a| w.y[tg.root(a)].clone()).collect());
    Ok(LabeledMatrix::new(tree_labels(tg), assemble(tg.tree_count(), arcs, potential)))
}

/// `det((-Q)^W)`, the weighted number of forests rooted in `W`.
pub fn matrix_tree_det(g: &DiGraph, rooted_in: VertexSet, w: &Weights) -> Result<Rat> {
    if rooted_in.is_empty() {
        return Err(Error::EmptySubset);
    }
    let q = build_operator_at(g, OperatorKind::Laplacian, w).delete_vertices(rooted_in)?;
    Ok(det_exact(&q.into_matrix().neg()))
}

/// `μ(v)`: total weight of the spanning trees rooted at `v`.
pub fn invariant_measure(g: &DiGraph, w: &Weights) -> Result<Vec<Rat>> {
    let mut mu = vec![Rat::zero(); g.vertex_count()];
    for a in spanning::enumerate_spanning_trees(g)? {
        mu[a.root()] += a.weight_at(&w.x);
    }
    Ok(mu)
}

/// `μQ`, which vanishes by the Markov chain tree theorem.
pub fn markov_residual(g: &DiGraph, w: &Weights) -> Result<Vec<Rat>> {
    let mu = invariant_measure(g, w)?;
    Ok(build_operator_at(g, OperatorKind::Laplacian, w).matrix().left_mul(&mu))
}

/// `π𝒬` for the measure `π_a` on the trees, computed edge by edge.
pub fn lifted_markov_residual(tg: &TreeGraph, w: &Weights) -> Vec<Rat> {
    let pi: Vec<Rat> = tg.trees().iter().map(|a| a.weight_at(&w.x)).collect();
    let mut out = vec![Rat::zero(); tg.tree_count()];
    for e in tg.edges() {
        let flow = &pi[e.source] * &w.x[e.label];
        out[e.target] += &flow;
        out[e.source] -= flow;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{det_symbolic, random_assignment, rat};
    use crate::digraph::all_graphs;

    fn cycle3() -> DiGraph {
        DiGraph::with_vertex_count(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn triangle() -> DiGraph {
        DiGraph::with_vertex_count(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap()
    }

    fn rats(rows: &[&[i64]]) -> SquareMatrix<Rat> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn single_vertex() {
        let g = DiGraph::with_vertex_count(1, &[]).unwrap();
        let l = build_operator(&g, OperatorKind::Schrodinger);
        assert_eq!(l.matrix().get(0, 0), &MultiPoly::var(Var::y(0)));
    }

    #[test]
    fn cycle_operators_at_unit_weights() {
        let g = cycle3();
        let w = Weights::unit(&g);
        let q = build_operator_at(&g, OperatorKind::Laplacian, &w);
        assert_eq!(q.matrix(), &rats(&[&[-1, 1, 0], &[0, -1, 1], &[1, 0, -1]]));
        let m = build_operator_at(&g, OperatorKind::Adjacency, &w);
        assert_eq!(m.matrix(), &rats(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]));
        let sym = build_operator(&g, OperatorKind::Adjacency);
        assert_eq!(sym.matrix().get(0, 0), &MultiPoly::zero());
        assert_eq!(sym.matrix().get(0, 1), &MultiPoly::var(Var::x(0)));
    }

    #[test]
    fn restrict_and_delete() {
        let g = DiGraph::with_vertex_count(2, &[(0, 1), (1, 0)]).unwrap();
        let l = build_operator(&g, OperatorKind::Schrodinger);
        assert_eq!(l.restrict(l.labels()).unwrap(), l);
        let r = l.restrict(&[Label::Vertex(0)]).unwrap();
        assert_eq!(r.matrix().get(0, 0), &(MultiPoly::var(Var::y(0)) - MultiPoly::var(Var::x(0))));
        assert_eq!(l.delete(&[]).unwrap(), l);
        let empty = l.delete(l.labels()).unwrap();
        assert_eq!(empty.dim(), 0);
        assert_eq!(det_exact(&empty.matrix().map(|_| rat(0))), rat(1));
        assert!(matches!(l.restrict(&[Label::Vertex(5)]), Err(Error::LabelNotPresent(_))));

        let q = build_operator_at(&triangle(), OperatorKind::Laplacian, &Weights::unit(&triangle()));
        assert_eq!(q.restrict(&[Label::Vertex(1)]).unwrap().matrix(), &rats(&[&[-2]]));
        let q = build_operator_at(&cycle3(), OperatorKind::Laplacian, &Weights::unit(&cycle3()));
        assert_eq!(q.delete(&[Label::Vertex(0)]).unwrap().matrix(), &rats(&[&[-1, 1], &[0, -1]]));
    }

    #[test]
    fn lifted_cycle_is_the_cycle() {
        let g = cycle3();
        let tg = TreeGraph::build(&g).unwrap();
        let lifted = build_lifted_operator(&tg, OperatorKind::Schrodinger, 2000).unwrap();
        let base = build_operator(&g, OperatorKind::Schrodinger);
        let order: Vec<usize> = (0..3).map(|a| tg.root(a)).collect();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(lifted.matrix().get(a, b), base.matrix().get(order[a], order[b]));
            }
        }
        let lq = build_lifted_operator(&TreeGraph::build(&triangle()).unwrap(), OperatorKind::Schrodinger, 2000).unwrap();
        assert_eq!(lq.dim(), 9);
    }

    #[test]
    fn lifted_diagonal_matches_root() {
        let g = triangle();
        let tg = TreeGraph::build(&g).unwrap();
        let lq = build_lifted_operator(&tg, OperatorKind::Laplacian, 2000).unwrap();
        let q = build_operator(&g, OperatorKind::Laplacian);
        for a in 0..tg.tree_count() {
            let r = tg.root(a);
            assert_eq!(lq.matrix().get(a, a), q.matrix().get(r, r));
        }
        assert!(build_lifted_operator(&tg, OperatorKind::Laplacian, 5).is_err());
    }

    #[test]
    fn row_sums_vanish() {
        let g = triangle();
        let tg = TreeGraph::build(&g).unwrap();
        for m in [
            build_operator(&g, OperatorKind::Laplacian).into_matrix(),
            build_lifted_operator(&tg, OperatorKind::Laplacian, 2000).unwrap().into_matrix(),
        ] {
            for row in m.rows() {
                let s = row.iter().fold(MultiPoly::zero(), |acc, p| acc + p.clone());
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn matrix_tree_examples() {
        let g = cycle3();
        let w = Weights::unit(&g);
        assert_eq!(matrix_tree_det(&g, g.all_vertices(), &w).unwrap(), rat(1));
        assert_eq!(matrix_tree_det(&g, VertexSet::singleton(0), &w).unwrap(), rat(1));
        let t = triangle();
        assert_eq!(matrix_tree_det(&t, VertexSet::singleton(0), &Weights::unit(&t)).unwrap(), rat(3));
    }

    #[test]
    fn matrix_tree_matches_forest_enumeration() {
        for (i, g) in all_graphs(3).enumerate() {
            let asg = random_assignment(operator_variables(&g), 7, i as u64);
            let w = Weights::from_assignment(&g, &asg).unwrap();
            for mask in 1u64..8 {
                let set = VertexSet::from_bits(mask);
                let forests: Rat = spanning::enumerate_forests(&g, set)
                    .unwrap()
                    .iter()
                    .fold(Rat::zero(), |acc, f| acc + f.weight_at(&w.x));
                assert_eq!(matrix_tree_det(&g, set, &w).unwrap(), forests);
            }
        }
    }

    #[test]
    fn symbolic_matrix_tree_on_triangle() {
        let g = triangle();
        let q = build_operator(&g, OperatorKind::Laplacian).delete_vertices(VertexSet::singleton(0)).unwrap();
        let det = det_symbolic(&q.into_matrix().neg(), 10).unwrap();
        assert_eq!(det, spanning::forest_polynomial(&g, VertexSet::singleton(0)).unwrap());
    }

    #[test]
    fn markov_chain_tree_theorem() {
        let g = triangle();
        let tg = TreeGraph::build(&g).unwrap();
        for trial in 0..3 {
            let w = Weights::from_assignment(&g, &random_assignment(operator_variables(&g), 11, trial)).unwrap();
            assert!(markov_residual(&g, &w).unwrap().iter().all(Zero::is_zero));
            assert!(lifted_markov_residual(&tg, &w).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn symbolic_and_evaluated_builders_agree() {
        let g = triangle();
        let tg = TreeGraph::build(&g).unwrap();
        let asg = random_assignment(operator_variables(&g), 3, 0);
        let w = Weights::from_assignment(&g, &asg).unwrap();
        for kind in [OperatorKind::Laplacian, OperatorKind::Schrodinger, OperatorKind::Adjacency] {
            let sym = build_operator(&g, kind).into_matrix().try_map(|p| p.evaluate(&asg)).unwrap();
            assert_eq!(&sym, build_operator_at(&g, kind, &w).matrix());
            let sym = build_lifted_operator(&tg, kind, 2000).unwrap().into_matrix().try_map(|p| p.evaluate(&asg)).unwrap();
            assert_eq!(&sym, build_lifted_operator_at(&tg, kind, &w, 2000).unwrap().matrix());
        }
    }
}
