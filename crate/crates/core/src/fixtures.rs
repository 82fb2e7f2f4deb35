//! The example families: bidirected cycles, complete graphs, bouquets and
//! hypercubes, with their closed forms checked against brute force.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{det_exact, random_assignment, Monomial, MultiPoly, Rat, Var};
use crate::digraph::{DiGraph, EdgeId, VertexId, VertexSet};
use crate::error::{Error, Result};
use crate::exploration::multiplicity_table_with;
use crate::factorization::{phi_at, phi_polynomial, Analysis};
use crate::operators::{build_lifted_operator_at, build_operator_at, matrix_tree_det, Label, OperatorKind, Weights};
use crate::spanning::{enumerate_forests, enumerate_spanning_trees, forest_polynomial, generating_polynomial};
use crate::Guards;

/// Bidirected cycle on `1..n`, `n >= 3`.
pub fn cycle_graph(n: usize) -> Result<DiGraph> {
    if n < 3 {
        return Err(Error::Parse(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let pairs: Vec<_> = (0..n).flat_map(|i| [(i, (i + 1) % n), (i, (i + n - 1) % n)]).collect();
    DiGraph::with_vertex_count(n, &pairs)
}

/// Complete digraph on `1..n`.
pub fn complete_graph(n: usize) -> Result<DiGraph> {
    if n == 0 {
        return Err(Error::Parse("complete graph needs at least 1 vertex".into()));
    }
    let pairs: Vec<_> = (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t))).collect();
    DiGraph::with_vertex_count(n, &pairs)
}

/// Four-vertex graph with multiplicities `m({4}) = 3`, `m({3,4}) = 2`,
/// `m({1,3,4}) = 1`, `m(V) = 1`.
pub fn figure_graph() -> DiGraph {
    DiGraph::with_vertex_count(4, &[(0, 1), (0, 3), (1, 2), (2, 0), (2, 3), (3, 2), (1, 3)]).expect("valid graph")
}

/// Hypercube `{0,1}^k` with both orientations of every edge. Vertex `u` has
/// coordinate `i` equal to bit `i` of `u`.
pub fn hypercube_graph(k: usize) -> Result<DiGraph> {
    if k == 0 || k > 6 {
        return Err(Error::Parse(format!("hypercube dimension must be in 1..=6, got {k}")));
    }
    let labels = (0..1usize << k).map(|u| (0..k).map(|i| if u >> i & 1 == 1 { '1' } else { '0' }).collect()).collect();
    let pairs: Vec<_> = (0..1usize << k).flat_map(|u| (0..k).map(move |i| (u, u ^ (1 << i)))).collect();
    DiGraph::new(labels, &pairs)
}

/// `y_i^j`: edges of the hypercube that set coordinate `i` to `j`.
pub fn hypercube_var(i: usize, j: usize) -> Var {
    Var::Aux((2 * i + j) as u32)
}

/// The variable `y_i^j` carried by a hypercube edge.
pub fn hypercube_edge_var(g: &DiGraph, e: EdgeId) -> Var {
    let edge = g.edge(e);
    let i = (edge.source ^ edge.target).trailing_zeros() as usize;
    hypercube_var(i, edge.target >> i & 1)
}

/// Bouquet with petal sizes `n_1, ..., n_k`: edges `0 -> i`, `i -> v_i^j`
/// and `v_i^j -> 0`.
#[derive(Clone, Debug)]
pub struct Bouquet {
    pub graph: DiGraph,
    pub sizes: Vec<usize>,
    /// `0 -> i`, weight `s_i`.
    pub stem_edges: Vec<EdgeId>,
    /// `i -> v_i^j`, weight `x_i^j`.
    pub petal_edges: Vec<Vec<EdgeId>>,
    /// `v_i^j -> 0`, weight 1.
    pub return_edges: Vec<Vec<EdgeId>>,
    /// The vertices `v_i^j`.
    pub petal_vertices: Vec<Vec<VertexId>>,
}

impl Bouquet {
    pub fn new(sizes: &[usize]) -> Result<Bouquet> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Parse("bouquet needs at least one petal, each of size at least 1".into()));
        }
        let k = sizes.len();
        let mut labels: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
        let mut petal_vertices = Vec::new();
        for (i, &n) in sizes.iter().enumerate() {
            let mut vs = Vec::new();
            for j in 1..=n {
                vs.push(labels.len());
                labels.push(format!("v{}_{}", i + 1, j));
            }
            petal_vertices.push(vs);
        }
        let mut pairs = Vec::new();
        for (i, vs) in petal_vertices.iter().enumerate() {
            pairs.push((0, i + 1));
            for &v in vs {
                pairs.push((i + 1, v));
                pairs.push((v, 0));
            }
        }
        let graph = DiGraph::new(labels, &pairs)?;
        let find = |s, t| graph.find_edge(s, t).expect("edge present");
        let stem_edges = (0..k).map(|i| find(0, i + 1)).collect();
        let petal_edges = (0..k).map(|i| petal_vertices[i].iter().map(|&v| find(i + 1, v)).collect()).collect();
        let return_edges = (0..k).map(|i| petal_vertices[i].iter().map(|&v| find(v, 0)).collect()).collect();
        Ok(Bouquet { graph, sizes: sizes.to_vec(), stem_edges, petal_edges, return_edges, petal_vertices })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    /// `W_I`: the center with the petals listed in `I` (a bitmask over `0..k`).
    pub fn w_set(&self, i_mask: usize) -> VertexSet {
        let mut w = VertexSet::singleton(0);
        for i in (0..self.k()).filter(|i| i_mask >> i & 1 == 1) {
            w.insert(i + 1);
            for &v in &self.petal_vertices[i] {
                w.insert(v);
            }
        }
        w
    }

    /// `m(W_I) = ∏_{i ∉ I} (n_i - 1)`.
    pub fn multiplicity(&self, i_mask: usize) -> u64 {
        (0..self.k()).filter(|i| i_mask >> i & 1 == 0).map(|i| self.sizes[i] as u64 - 1).product()
    }

    fn s(&self, i: usize) -> MultiPoly {
        MultiPoly::var(Var::x(self.stem_edges[i]))
    }

    fn petal_sum(&self, i: usize) -> MultiPoly {
        self.petal_edges[i].iter().fold(MultiPoly::zero(), |acc, &e| acc + MultiPoly::var(Var::x(e)))
    }

    /// `det Q_{W_I} = (Σ_{i ∉ I} s_i) ∏_{i ∈ I} Σ_j x_i^j` for proper `I`.
    pub fn det_q_w(&self, i_mask: usize) -> MultiPoly {
        let mut stems = MultiPoly::zero();
        let mut product = MultiPoly::one();
        for i in 0..self.k() {
            if i_mask >> i & 1 == 1 {
                product = &product * &self.petal_sum(i);
            } else {
                stems = stems + self.s(i);
            }
        }
        &stems * &product
    }

    /// `Φ_B = ∏_{I ⊊ [k]} det(Q_{W_I})^{m(W_I)}`.
    pub fn phi(&self) -> MultiPoly {
        let full = (1 << self.k()) - 1;
        (0..full).fold(MultiPoly::one(), |acc, mask| &acc * &self.det_q_w(mask).pow(self.multiplicity(mask)))
    }

    /// Sets the weight of every edge `v_i^j -> 0` to 1.
    pub fn unit_returns(&self, p: &MultiPoly) -> MultiPoly {
        let returns: BTreeSet<Var> = self.return_edges.iter().flatten().map(|&e| Var::x(e)).collect();
        let mut out = MultiPoly::zero();
        for (m, c) in p.terms() {
            let kept = m.powers().iter().copied().filter(|(v, _)| !returns.contains(v));
            out.add_term(Monomial::from_powers(kept), c.clone());
        }
        out
    }

    /// `det Q_{W_I}` at edge values `x`.
    pub fn det_q_w_at(&self, i_mask: usize, x: &[Rat]) -> Rat {
        let mut stems = Rat::zero();
        let mut product = Rat::one();
        for i in 0..self.k() {
            if i_mask >> i & 1 == 1 {
                product *= self.petal_edges[i].iter().fold(Rat::zero(), |acc, &e| acc + &x[e]);
            } else {
                stems += &x[self.stem_edges[i]];
            }
        }
        stems * product
    }

    /// `Φ_B` at edge values `x`.
    pub fn phi_at(&self, x: &[Rat]) -> Rat {
        let full = (1 << self.k()) - 1;
        (0..full).fold(Rat::one(), |acc, mask| acc * crate::algebra::pow_rat(&self.det_q_w_at(mask, x), self.multiplicity(mask)))
    }

    /// `det(zI - Q_{W_I})` when edges leaving petal vertices carry `w`
    /// and `x_i^j` is replaced by `w x_i^j`.
    pub fn refined_det(&self, i_mask: usize, x: &[Rat], z: &Rat, w: &Rat) -> Rat {
        let wz = w + z;
        let petal_x = |i: usize| self.petal_edges[i].iter().fold(Rat::zero(), |acc, &e| acc + w * &x[e]);
        let factor = |i: usize| (z + petal_x(i)) * crate::algebra::pow_rat(&wz, self.sizes[i] as u64);
        let inside: Vec<usize> = (0..self.k()).filter(|i| i_mask >> i & 1 == 1).collect();
        let stems = (0..self.k()).filter(|i| i_mask >> i & 1 == 0).fold(Rat::zero(), |acc, i| acc + &x[self.stem_edges[i]]);
        let mut total = inside.iter().fold(z + stems, |acc, &i| acc * factor(i));
        for &i0 in &inside {
            let n0 = self.sizes[i0] as u64;
            let head = z * petal_x(i0) * crate::algebra::pow_rat(&wz, n0 - 1) + z * crate::algebra::pow_rat(&wz, n0);
            let rest = inside.iter().filter(|&&i| i != i0).fold(Rat::one(), |acc, &i| acc * factor(i));
            total += &x[self.stem_edges[i0]] * head * rest;
        }
        total
    }

    /// Weights for the refined determinant.
    pub fn refined_weights(&self, x: &[Rat], w: &Rat) -> Weights {
        let mut out = x.to_vec();
        for (i, edges) in self.petal_edges.iter().enumerate() {
            for (j, &e) in edges.iter().enumerate() {
                out[e] = w * &x[e];
                out[self.return_edges[i][j]] = w.clone();
            }
        }
        Weights { x: out, y: vec![Rat::zero(); self.graph.vertex_count()] }
    }
}

/// A named example graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Cycle(usize),
    Complete(usize),
    Bouquet(Vec<usize>),
    Hypercube(usize),
    Figure,
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `cycle:n`, `complete:n`, `bouquet:n1,n2,...`, `hypercube:n`
    /// and `figure`, with an optional `builtin:` prefix.
    fn from_str(s: &str) -> Result<Builtin> {
        let s = s.strip_prefix("builtin:").unwrap_or(s);
        let (name, arg) = s.split_once(':').unwrap_or((s, ""));
        let number = |a: &str| a.trim().parse::<usize>().map_err(|_| Error::Parse(format!("invalid size {a:?} in builtin {s:?}")));
        match name {
            "cycle" => Ok(Builtin::Cycle(number(arg)?)),
            "complete" => Ok(Builtin::Complete(number(arg)?)),
            "hypercube" => Ok(Builtin::Hypercube(number(arg)?)),
            "bouquet" => Ok(Builtin::Bouquet(arg.split(',').map(number).collect::<Result<_>>()?)),
            "figure" if arg.is_empty() => Ok(Builtin::Figure),
            _ => Err(Error::Parse(format!("unknown builtin {s:?}"))),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Cycle(n) => write!(f, "cycle:{n}"),
            Builtin::Complete(n) => write!(f, "complete:{n}"),
            Builtin::Hypercube(n) => write!(f, "hypercube:{n}"),
            Builtin::Bouquet(sizes) => {
                let parts: Vec<String> = sizes.iter().map(usize::to_string).collect();
                write!(f, "bouquet:{}", parts.join(","))
            }
            Builtin::Figure => write!(f, "figure"),
        }
    }
}

impl Builtin {
    pub fn graph(&self) -> Result<DiGraph> {
        match self {
            Builtin::Cycle(n) => cycle_graph(*n),
            Builtin::Complete(n) => complete_graph(*n),
            Builtin::Bouquet(sizes) => Ok(Bouquet::new(sizes)?.graph),
            Builtin::Hypercube(k) => hypercube_graph(*k),
            Builtin::Figure => Ok(figure_graph()),
        }
    }
}

/// One closed-form check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub holds: bool,
}

impl CheckRecord {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> CheckRecord {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        CheckRecord { name: name.into(), holds: expected == actual, expected, actual }
    }

    fn flag(name: impl Into<String>, holds: bool) -> CheckRecord {
        CheckRecord::new(name, true, holds)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `∏_{i=1}^k (2i)^{C(k,i)}`.
pub fn stanley_count(k: usize) -> BigInt {
    (1..=k as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i).pow(binomial(k as u64, i) as u32))
}

/// `m(W) = (k-1)(n-1)^{n-k-1}` for `|W| = k` in the complete graph on `n`.
pub fn complete_multiplicity(n: usize, k: usize) -> u64 {
    if k == n {
        1
    } else {
        (k as u64 - 1) * (n as u64 - 1).pow((n - k - 1) as u32)
    }
}

/// Rooted spanning trees of the hypercube rooted at `m`, in `y_i^j`.
pub fn hypercube_tree_formula(k: usize, m: usize) -> MultiPoly {
    let mut out = MultiPoly::monomial(Monomial::product_of((0..k).map(|i| hypercube_var(i, m >> i & 1))), Rat::one());
    for j in (0usize..1 << k).filter(|j| j.count_ones() >= 2) {
        let sum = (0..k)
            .filter(|i| j >> i & 1 == 1)
            .fold(MultiPoly::zero(), |acc, i| acc + MultiPoly::var(hypercube_var(i, 0)) + MultiPoly::var(hypercube_var(i, 1)));
        out = &out * &sum;
    }
    out
}

/// `∏_{J ⊆ [k]} (z + Σ_{i ∈ J} (y_i^0 + y_i^1))`.
pub fn hypercube_forest_formula(k: usize) -> MultiPoly {
    (0usize..1 << k).fold(MultiPoly::one(), |acc, j| {
        let factor = (0..k)
            .filter(|i| j >> i & 1 == 1)
            .fold(MultiPoly::var(Var::Z), |f, i| f + MultiPoly::var(hypercube_var(i, 0)) + MultiPoly::var(hypercube_var(i, 1)));
        &acc * &factor
    })
}

/// All rooted spanning forests of `g`, with `z` per root and `var(e)` per edge.
pub fn forest_generating_function(g: &DiGraph, var: impl Fn(EdgeId) -> Var) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for bits in 1..1u64 << g.vertex_count() {
        let roots = VertexSet::from_bits(bits);
        let z = Monomial::from_powers([(Var::Z, roots.len() as u32)]);
        for f in enumerate_forests(g, roots)? {
            out.add_term(f.weight_with(&var).mul(&z), Rat::one());
        }
    }
    Ok(out)
}

fn cycle_checks(n: usize, guards: &Guards) -> Result<Vec<CheckRecord>> {
    let g = cycle_graph(n)?;
    let table = multiplicity_table_with(&g, guards)?;
    let mut out = vec![CheckRecord::new("spanning trees n^2", n * n, table.tree_count)];
    let expected: BTreeSet<(VertexSet, u64)> = g
        .all_vertices()
        .iter()
        .map(|v| (g.all_vertices().difference(VertexSet::singleton(v)), 1))
        .chain([(g.all_vertices(), 1)])
        .collect();
    let actual: BTreeSet<(VertexSet, u64)> = table.nonzero().map(|e| (e.set, e.m)).collect();
    out.push(CheckRecord::flag("m(W) = 1 exactly for |W| = n-1 and W = V", expected == actual));
    if n <= 5 {
        let an = Analysis::new(&g, guards)?;
        let minors = g.all_vertices().iter().try_fold(MultiPoly::one(), |acc, v| {
            Ok::<_, Error>(&acc * &forest_polynomial(&g, VertexSet::singleton(v))?)
        })?;
        out.push(CheckRecord::flag("Phi is the product of the symmetric minors of size n-1", phi_polynomial(&an)? == minors));
    }
    Ok(out)
}

fn complete_checks(n: usize, guards: &Guards) -> Result<Vec<CheckRecord>> {
    let g = complete_graph(n)?;
    let table = multiplicity_table_with(&g, guards)?;
    let mut out = vec![CheckRecord::new("spanning trees n^(n-1)", (n as u64).pow(n as u32 - 1), table.tree_count)];
    let bad = table.entries.iter().filter(|e| e.m != complete_multiplicity(n, e.set.len())).count();
    out.push(CheckRecord::new("sets violating m(W) = (k-1)(n-1)^(n-k-1)", 0, bad));
    Ok(out)
}

fn figure_checks(guards: &Guards) -> Result<Vec<CheckRecord>> {
    let g = figure_graph();
    let table = multiplicity_table_with(&g, guards)?;
    let set = |vs: &[usize]| vs.iter().copied().collect::<VertexSet>();
    let actual: Vec<(VertexSet, u64)> = table.nonzero().map(|e| (e.set, e.m)).collect();
    let mut expected = vec![(set(&[3]), 3), (set(&[2, 3]), 2), (set(&[0, 2, 3]), 1), (g.all_vertices(), 1)];
    expected.sort();
    let mut sorted = actual.clone();
    sorted.sort();
    Ok(vec![
        CheckRecord::new("spanning trees", 14, table.tree_count),
        CheckRecord::flag("m({4}) = 3, m({3,4}) = 2, m({1,3,4}) = 1, m(V) = 1", sorted == expected),
    ])
}

fn bouquet_checks(sizes: &[usize], seed: u64, guards: &Guards) -> Result<Vec<CheckRecord>> {
    let b = Bouquet::new(sizes)?;
    let g = &b.graph;
    let full = (1usize << b.k()) - 1;
    let an = Analysis::new(g, guards)?;
    let mut out = Vec::new();

    let mut det_ok = true;
    for mask in 0..full {
        let psi = b.unit_returns(&forest_polynomial(g, g.all_vertices().difference(b.w_set(mask)))?);
        det_ok &= psi == b.det_q_w(mask);
    }
    out.push(CheckRecord::flag("det Q_{W_I} closed form", det_ok));

    let expected: BTreeSet<(VertexSet, u64)> =
        (0..=full).map(|mask| (b.w_set(mask), b.multiplicity(mask))).filter(|&(_, m)| m > 0).collect();
    let actual: BTreeSet<(VertexSet, u64)> = an.table.nonzero().map(|e| (e.set, e.m)).collect();
    out.push(CheckRecord::flag("m(W_I) = prod_{i not in I} (n_i - 1), zero elsewhere", expected == actual));

    let unit_return_weights = |trial: u64| {
        let mut w = an.weights(seed, trial);
        for &e in b.return_edges.iter().flatten() {
            w.x[e] = Rat::one();
        }
        w
    };
    let mut phi_ok = true;
    for trial in 0..3 {
        let w = unit_return_weights(trial);
        phi_ok &= phi_at(&an, &w)? == b.phi_at(&w.x);
    }
    out.push(CheckRecord::flag("Phi_B closed form at 3 random points", phi_ok));
    if b.k() <= 2 {
        out.push(CheckRecord::flag("Phi_B closed form as a polynomial", b.unit_returns(&phi_polynomial(&an)?) == b.phi()));
    }

    // spanning trees of TB rooted at a tree of B rooted at the center
    let w = unit_return_weights(0);
    let phi = phi_at(&an, &w)?;
    let q = build_lifted_operator_at(&an.tree_graph, OperatorKind::Laplacian, &w, guards.lifted_dim)?;
    let mut rooted_ok = true;
    for (a, tree) in an.tree_graph.trees().iter().enumerate().filter(|(_, t)| t.root() == 0) {
        let minor = det_exact(&q.delete(&[Label::Tree(a)])?.into_matrix().neg());
        rooted_ok &= minor == tree.weight_at(&w.x) * &phi;
    }
    out.push(CheckRecord::flag("trees of TB rooted at a_m: (prod x_i^{m_i}) Phi_B", rooted_ok));

    let mut refined_ok = true;
    for trial in 0..3 {
        let zw = random_assignment([Var::Z, Var::Aux(0)], seed, trial);
        let (z, wt) = (zw.get(Var::Z).expect("drawn").clone(), zw.get(Var::Aux(0)).expect("drawn").clone());
        let x = an.weights(seed, trial).x;
        let weights = b.refined_weights(&x, &wt);
        let l = build_operator_at(g, OperatorKind::Laplacian, &weights);
        for mask in 0..full {
            let direct = det_exact(&l.restrict_vertices(b.w_set(mask))?.into_matrix().shifted(&z));
            refined_ok &= direct == b.refined_det(mask, &x, &z, &wt);
        }
    }
    out.push(CheckRecord::flag("refined det(zI - Q_{W_I}) at 3 random (z, w)", refined_ok));
    Ok(out)
}

fn hypercube_checks(k: usize) -> Result<Vec<CheckRecord>> {
    let g = hypercube_graph(k)?;
    let unit = Weights::unit(&g);
    let by_matrix_tree = g.all_vertices().iter().try_fold(Rat::zero(), |acc, v| {
        Ok::<_, Error>(acc + matrix_tree_det(&g, VertexSet::singleton(v), &unit)?)
    })?;
    let stanley = stanley_count(k);
    let mut out = vec![CheckRecord::new("Stanley count by matrix-tree", &stanley, by_matrix_tree)];
    if k > 3 {
        return Ok(out);
    }
    let trees = enumerate_spanning_trees(&g)?;
    out.push(CheckRecord::new("Stanley count by enumeration", &stanley, trees.len()));
    let mut rooted_ok = true;
    for m in 0..1usize << k {
        let listed = generating_polynomial(trees.iter().filter(|t| t.root() == m).map(|t| t.weight_with(|e| hypercube_edge_var(&g, e))));
        rooted_ok &= listed == hypercube_tree_formula(k, m);
    }
    out.push(CheckRecord::flag("rooted tree polynomial prod y_i^{m_i} prod_{|J|>=2} sum (y_i^0 + y_i^1)", rooted_ok));
    let forests = forest_generating_function(&g, |e| hypercube_edge_var(&g, e))?;
    out.push(CheckRecord::flag("forest polynomial prod_J (z + sum_{i in J} (y_i^0 + y_i^1))", forests == hypercube_forest_formula(k)));
    Ok(out)
}

/// Closed-form checks attached to a builtin example.
pub fn builtin_checks(b: &Builtin, seed: u64, guards: &Guards) -> Result<Vec<CheckRecord>> {
    match b {
        Builtin::Cycle(n) => cycle_checks(*n, guards),
        Builtin::Complete(n) => complete_checks(*n, guards),
        Builtin::Bouquet(sizes) => bouquet_checks(sizes, seed, guards),
        Builtin::Hypercube(k) => hypercube_checks(*k),
        Builtin::Figure => figure_checks(guards),
    }
}

/// The full cast: cycles and complete graphs up to 5 vertices, bouquets
/// with at most 3 petals of size at most 3, hypercubes up to dimension 3.
pub fn builtin_examples() -> Vec<Builtin> {
    let mut out: Vec<Builtin> = (3..=5).map(Builtin::Cycle).collect();
    out.extend((2..=5).map(Builtin::Complete));
    for k in 1..=3u32 {
        for code in 0..3usize.pow(k) {
            let sizes: Vec<usize> = (0..k).map(|i| code / 3usize.pow(i) % 3 + 1).collect();
            if sizes.windows(2).all(|p| p[0] <= p[1]) {
                out.push(Builtin::Bouquet(sizes));
            }
        }
    }
    out.extend((1..=3).map(Builtin::Hypercube));
    out.push(Builtin::Figure);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn parse_round_trip() {
        for s in ["cycle:4", "complete:3", "bouquet:2,3", "hypercube:2", "figure"] {
            let b: Builtin = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
            let prefixed: Builtin = format!("builtin:{s}").parse().unwrap();
            assert_eq!(prefixed, b);
        }
        assert!("cycle:x".parse::<Builtin>().is_err());
        assert!("wheel:4".parse::<Builtin>().is_err());
        assert!(Builtin::Cycle(2).graph().is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(cycle_graph(4).unwrap().edge_count(), 8);
        assert_eq!(complete_graph(4).unwrap().edge_count(), 12);
        let h = hypercube_graph(3).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (8, 24));
        assert_eq!(h.label(5), "101");
        let b = Bouquet::new(&[2, 3]).unwrap();
        assert_eq!(b.graph.vertex_count(), 1 + 2 + 5);
        assert_eq!(b.graph.edge_count(), 2 + 2 * 5);
        assert!(b.graph.is_strongly_connected());
    }

    #[test]
    fn stanley_values() {
        assert_eq!(stanley_count(2), BigInt::from(16));
        assert_eq!(stanley_count(3), BigInt::from(3072));
    }

    #[test]
    fn forest_formula_at_unit_weights() {
        // z (z+2)^2 (z+4) = z^4 + 8 z^3 + 20 z^2 + 16 z
        let g = hypercube_graph(2).unwrap();
        let forests = forest_generating_function(&g, |_| Var::Aux(99)).unwrap();
        let mut counts = vec![Rat::zero(); 5];
        for (m, c) in forests.terms() {
            counts[m.exponent(Var::Z) as usize] += c;
        }
        assert_eq!(counts, [0, 16, 20, 8, 1].map(rat));
    }

    #[test]
    fn refined_det_reduces_to_det_q_w() {
        let b = Bouquet::new(&[2, 1]).unwrap();
        let x: Vec<Rat> = (0..b.graph.edge_count()).map(|e| rat(e as i64 + 2)).collect();
        let at = |p: &MultiPoly| {
            let mut asg = crate::algebra::Assignment::new();
            for (e, v) in x.iter().enumerate() {
                asg.set(Var::x(e), v.clone());
            }
            p.evaluate(&asg).unwrap()
        };
        for mask in 0..3 {
            assert_eq!(b.refined_det(mask, &x, &Rat::zero(), &Rat::one()), at(&b.det_q_w(mask)));
        }
    }

    #[test]
    fn every_builtin_check_holds() {
        let guards = Guards::default();
        for b in builtin_examples() {
            if matches!(b, Builtin::Bouquet(ref s) if s.len() == 3) {
                continue;
            }
            for c in builtin_checks(&b, 1, &guards).unwrap() {
                assert!(c.holds, "{b}: {c:?}");
            }
        }
    }
}
