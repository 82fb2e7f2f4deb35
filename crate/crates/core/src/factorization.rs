//! Checks of the determinant factorizations at random evaluation points and,
//! on small instances, as polynomial identities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{
    char_poly, det_exact, det_symbolic, pow_rat, random_assignment, MultiPoly, Rat, UniPoly, Var,
};
use crate::digraph::{DiGraph, VertexSet};
use crate::error::{Error, Result};
use crate::exploration::{athanasiadis_table, multiplicity_table_with, MultiplicityTable};
use crate::operators::{
    build_lifted_operator, build_lifted_operator_at, build_operator, build_operator_at, lifted_markov_residual,
    matrix_tree_det, operator_variables, Label, OperatorKind, Weights,
};
use crate::spanning::{self, forest_polynomial, generating_polynomial, tree_polynomial};
use crate::treegraph::TreeGraph;
use crate::Guards;

/// Largest tree graph for which every minor of `𝒬` is computed directly.
pub const DIRECT_MINOR_LIMIT: usize = 40;
/// Largest number of spanning trees of `TG` enumerated one by one.
pub const TREE_GRAPH_ENUMERATION_LIMIT: usize = 200_000;

/// A strongly connected graph with its tree graph and multiplicities.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub graph: DiGraph,
    pub tree_graph: TreeGraph,
    pub table: MultiplicityTable,
}

impl Analysis {
    pub fn new(g: &DiGraph, guards: &Guards) -> Result<Analysis> {
        if !g.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        let table = multiplicity_table_with(g, guards)?;
        let tree_graph = TreeGraph::build_with(g, guards)?;
        if table.degree_sum() != tree_graph.tree_count() as u64 {
            return Err(Error::Invariant("degree identity fails".into()));
        }
        Ok(Analysis { graph: g.clone(), tree_graph, table })
    }

    pub fn lifted_dim(&self) -> usize {
        self.tree_graph.tree_count()
    }

    /// Weights of trial `trial` for the given seed.
    pub fn weights(&self, seed: u64, trial: u64) -> Weights {
        let asg = random_assignment(operator_variables(&self.graph), seed, trial);
        Weights::from_assignment(&self.graph, &asg).expect("assignment covers every variable")
    }

    fn proper_factors(&self) -> impl Iterator<Item = (VertexSet, u64)> + '_ {
        let all = self.graph.all_vertices();
        self.table.nonzero().filter(move |e| e.set != all).map(|e| (e.set, e.m))
    }

    fn labels(&self, w: VertexSet) -> Vec<String> {
        w.iter().map(|v| self.graph.label(v).to_string()).collect()
    }
}

/// Outcome of one evaluation point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    /// Present only when the identity fails, for reproduction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<BTreeMap<String, String>>,
}

impl TrialOutcome {
    fn new(trial: u64, lhs: &Rat, rhs: &Rat, w: &Weights) -> TrialOutcome {
        let holds = lhs == rhs;
        TrialOutcome {
            trial,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds,
            assignment: (!holds).then(|| w.to_assignment().to_json()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorRecord {
    #[serde(rename = "W")]
    pub w: Vec<String>,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub seed: u64,
    pub lifted_dim: usize,
    pub factors: Vec<FactorRecord>,
    pub trials: Vec<TrialOutcome>,
    /// Polynomial comparison, when it was run.
    pub symbolic: Option<bool>,
    pub holds: bool,
}

/// `ℒ` symbolically, guarded by the symbolic dimension.
fn symbolic_guard(dim: usize, guards: &Guards) -> Result<()> {
    if dim > guards.symbolic_dim {
        return Err(Error::SymbolicGuard { dim, limit: guards.symbolic_dim });
    }
    Ok(())
}

/// `det ℒ = ∏ det(L_W)^{m(W)}` at `trials` random points, and as polynomials
/// when `symbolic` is set or the lifted dimension is within the symbolic guard.
pub fn verify_main_theorem(an: &Analysis, trials: u64, seed: u64, symbolic: bool, guards: &Guards) -> Result<MainTheoremReport> {
    let g = &an.graph;
    let dim = an.lifted_dim();
    if symbolic {
        symbolic_guard(dim, guards)?;
    }
    let factors: Vec<(VertexSet, u64)> = an.table.nonzero().map(|e| (e.set, e.m)).collect();
    let mut outcomes = Vec::new();
    for trial in 0..trials {
        let w = an.weights(seed, trial);
        let lhs = det_exact(build_lifted_operator_at(&an.tree_graph, OperatorKind::Schrodinger, &w, guards.lifted_dim)?.matrix());
        let l = build_operator_at(g, OperatorKind::Schrodinger, &w);
        let mut rhs = Rat::one();
        for &(set, m) in &factors {
            rhs *= pow_rat(&det_exact(l.restrict_vertices(set)?.matrix()), m);
        }
        outcomes.push(TrialOutcome::new(trial, &lhs, &rhs, &w));
    }
    let symbolic_result = if symbolic || dim <= guards.symbolic_dim {
        let lhs = det_symbolic(build_lifted_operator(&an.tree_graph, OperatorKind::Schrodinger, guards.lifted_dim)?.matrix(), guards.symbolic_dim)?;
        let l = build_operator(g, OperatorKind::Schrodinger);
        let mut rhs = MultiPoly::one();
        for &(set, m) in &factors {
            rhs = &rhs * &det_symbolic(l.restrict_vertices(set)?.matrix(), guards.symbolic_dim)?.pow(m);
        }
        Some(lhs == rhs)
    } else {
        None
    };
    let holds = outcomes.iter().all(|t| t.holds) && symbolic_result != Some(false);
    Ok(MainTheoremReport {
        seed,
        lifted_dim: dim,
        factors: factors.iter().map(|&(s, m)| FactorRecord { w: an.labels(s), m }).collect(),
        trials: outcomes,
        symbolic: symbolic_result,
        holds,
    })
}

/// `Φ_G = ∏ Ψ_{V\W}^{m(W)}` over proper strongly connected `W`, with `Ψ`
/// the forest generating polynomial.
pub fn phi_polynomial(an: &Analysis) -> Result<MultiPoly> {
    let all = an.graph.all_vertices();
    let mut phi = MultiPoly::one();
    for (set, m) in an.proper_factors() {
        phi = &phi * &forest_polynomial(&an.graph, all.difference(set))?.pow(m);
    }
    Ok(phi)
}

/// `Φ_G` at the given weights, each `Ψ` by the matrix-tree theorem.
pub fn phi_at(an: &Analysis, w: &Weights) -> Result<Rat> {
    let all = an.graph.all_vertices();
    let mut phi = Rat::one();
    for (set, m) in an.proper_factors() {
        phi *= pow_rat(&matrix_tree_det(&an.graph, all.difference(set), w)?, m);
    }
    Ok(phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinorMethod {
    /// Every minor computed as a determinant.
    Direct,
    /// One minor computed, the others from the rank-one adjugate of `-𝒬`
    /// and the invariance of `π`, with a second minor as a cross-check.
    RankOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorTrial {
    pub trial: u64,
    pub minors_checked: usize,
    /// Trees whose minor is not `±π_a Φ_G`.
    pub mismatches: Vec<usize>,
    pub signs: Vec<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorReport {
    pub seed: u64,
    pub method: MinorMethod,
    /// The common sign `s` in `det(𝒬^a) = s π_a Φ_G`, when there is one.
    pub sign: Option<i32>,
    /// `(-1)^{|TV| - 1}`, the sign predicted by `det(-𝒬)^a = π_a Φ_G`.
    pub expected_sign: i32,
    pub trials: Vec<MinorTrial>,
    pub holds: bool,
}

fn ratio_sign(lhs: &Rat, rhs: &Rat) -> Option<i32> {
    if rhs.is_zero() {
        return None;
    }
    let r = lhs / rhs;
    if r.is_one() {
        Some(1)
    } else if (-r).is_one() {
        Some(-1)
    } else {
        None
    }
}

/// `det(𝒬^a) = ± π_a Φ_G` for every tree `a`, one sign per graph.
pub fn verify_minors(an: &Analysis, trials: u64, seed: u64, guards: &Guards) -> Result<MinorReport> {
    let tg = &an.tree_graph;
    let n = tg.tree_count();
    let method = if n <= DIRECT_MINOR_LIMIT { MinorMethod::Direct } else { MinorMethod::RankOne };
    let expected_sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    let mut out = Vec::new();
    for trial in 0..trials {
        let w = an.weights(seed, trial);
        let q = build_lifted_operator_at(tg, OperatorKind::Laplacian, &w, guards.lifted_dim)?;
        let phi = phi_at(an, &w)?;
        let pi: Vec<Rat> = tg.trees().iter().map(|a| a.weight_at(&w.x)).collect();
        let minor = |a: usize| -> Result<Rat> { Ok(det_exact(q.delete(&[Label::Tree(a)])?.matrix())) };
        let mut values = Vec::with_capacity(n);
        let mut mismatches = Vec::new();
        match method {
            MinorMethod::Direct => {
                for a in 0..n {
                    values.push(minor(a)?);
                }
            }
            MinorMethod::RankOne => {
                let first = minor(0)?;
                let last = minor(n - 1)?;
                // adj(-𝒬) = λ 1 c^T with c ∝ π once π𝒬 = 0
                let invariant = lifted_markov_residual(tg, &w).iter().all(Zero::is_zero);
                let lambda = &first / &pi[0];
                if !invariant || pi.iter().any(Zero::is_zero) || last != &lambda * &pi[n - 1] {
                    mismatches.push(n - 1);
                }
                values.push(first);
                values.extend((1..n).map(|a| &lambda * &pi[a]));
            }
        }
        let mut signs = Vec::new();
        for (a, value) in values.iter().enumerate() {
            match ratio_sign(value, &(&pi[a] * &phi)) {
                Some(s) if !signs.contains(&s) => signs.push(s),
                Some(_) => {}
                None => mismatches.push(a),
            }
        }
        mismatches.sort_unstable();
        mismatches.dedup();
        let checked = values.len();
        let failed = !mismatches.is_empty() || signs.len() > 1;
        out.push(MinorTrial {
            trial,
            minors_checked: checked,
            mismatches,
            signs,
            assignment: failed.then(|| w.to_assignment().to_json()),
        });
    }
    let mut all_signs: Vec<i32> = out.iter().flat_map(|t| t.signs.iter().copied()).collect();
    all_signs.sort_unstable();
    all_signs.dedup();
    let sign = (all_signs.len() == 1).then(|| all_signs[0]);
    let holds = sign.is_some() && out.iter().all(|t| t.mismatches.is_empty());
    Ok(MinorReport { seed, method, sign, expected_sign, trials: out, holds })
}

/// Polynomial check of `det(-𝒬)^a = π_a Φ_G` for every tree.
pub fn verify_minors_symbolic(an: &Analysis, guards: &Guards) -> Result<bool> {
    let tg = &an.tree_graph;
    symbolic_guard(tg.tree_count() - 1, guards)?;
    let q = build_lifted_operator(tg, OperatorKind::Laplacian, guards.lifted_dim)?;
    let phi = phi_polynomial(an)?;
    for a in 0..tg.tree_count() {
        let minor = det_symbolic(&q.delete(&[Label::Tree(a)])?.into_matrix().neg(), guards.symbolic_dim)?;
        let pi = MultiPoly::monomial(tg.tree(a).weight(), Rat::one());
        if minor != &pi * &phi {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeSumMethod {
    /// Spanning trees of `TG` listed one by one.
    Enumeration,
    /// `det(-𝒬 + 1 e_1^T)`, the trace of the adjugate of `-𝒬`.
    MatrixTree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningRatioReport {
    pub seed: u64,
    pub method: TreeSumMethod,
    pub trials: Vec<TrialOutcome>,
    pub symbolic: Option<bool>,
    pub holds: bool,
}

/// Spanning trees of `TG`, each as the list of edges of `G` it projects to.
fn tree_graph_trees(tg: &TreeGraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let d = tg.as_digraph();
    Ok(spanning::enumerate_spanning_trees_with_limit(&d, limit)?
        .into_iter()
        .map(|t| t.edges().iter().map(|&e| tg.edge(e).label).collect())
        .collect())
}

/// `F_{TG}` at the given weights, from the adjugate trace.
pub fn tree_graph_tree_sum(tg: &TreeGraph, w: &Weights, guards: &Guards) -> Result<Rat> {
    let q = build_lifted_operator_at(tg, OperatorKind::Laplacian, w, guards.lifted_dim)?;
    let mut a = q.into_matrix().neg();
    for i in 0..a.dim() {
        let v = a.get(i, 0).clone() + Rat::one();
        a.set(i, 0, v);
    }
    Ok(det_exact(&a))
}

/// `F_{TG} = Φ_G F_G` at random points, and as polynomials when `TG` has
/// few enough spanning trees and the symbolic mode applies.
pub fn verify_spanning_ratio(an: &Analysis, trials: u64, seed: u64, symbolic: bool, guards: &Guards) -> Result<SpanningRatioReport> {
    let tg = &an.tree_graph;
    let listed = if tg.tree_count() <= 16 || symbolic {
        match tree_graph_trees(tg, TREE_GRAPH_ENUMERATION_LIMIT) {
            Ok(trees) => Some(trees),
            Err(Error::TreeLimit { .. }) if !symbolic => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let method = if listed.is_some() { TreeSumMethod::Enumeration } else { TreeSumMethod::MatrixTree };
    let mut outcomes = Vec::new();
    for trial in 0..trials {
        let w = an.weights(seed, trial);
        let lhs = match &listed {
            Some(trees) => trees
                .iter()
                .fold(Rat::zero(), |acc, t| acc + t.iter().fold(Rat::one(), |p, &e| p * &w.x[e])),
            None => tree_graph_tree_sum(tg, &w, guards)?,
        };
        let f_g = tg.trees().iter().fold(Rat::zero(), |acc, a| acc + a.weight_at(&w.x));
        let rhs = phi_at(an, &w)? * f_g;
        outcomes.push(TrialOutcome::new(trial, &lhs, &rhs, &w));
    }
    let symbolic_result = match &listed {
        Some(trees) if symbolic || tg.tree_count() <= guards.symbolic_dim => {
            let lhs = generating_polynomial(trees.iter().map(|t| crate::algebra::Monomial::product_of(t.iter().map(|&e| Var::x(e)))));
            Some(lhs == &phi_polynomial(an)? * &tree_polynomial(&an.graph)?)
        }
        _ => None,
    };
    let holds = outcomes.iter().all(|t| t.holds) && symbolic_result != Some(false);
    Ok(SpanningRatioReport { seed, method, trials: outcomes, symbolic: symbolic_result, holds })
}

/// Brute-force count of the spanning trees of `TG`.
pub fn tree_graph_tree_count(tg: &TreeGraph, limit: usize) -> Result<usize> {
    Ok(spanning::enumerate_spanning_trees_with_limit(&tg.as_digraph(), limit)?.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentRecord {
    #[serde(rename = "W")]
    pub w: Vec<String>,
    pub n: String,
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjacencyReport {
    pub lifted_dim: usize,
    /// Coefficients of `det(zI - ℳ)`, ascending.
    pub char_poly: Vec<String>,
    /// Strongly connected sets with a nonzero exponent in either table.
    pub exponents: Vec<ExponentRecord>,
    pub tables_agree: bool,
    pub holds_with_n: bool,
    pub holds_with_m: bool,
    pub holds: bool,
}

/// `∏ P_W^{e(W)}` split into the factors with positive and negative exponents.
fn signed_product(factors: &[(UniPoly, BigInt)]) -> (UniPoly, UniPoly) {
    let mut num = UniPoly::one();
    let mut den = UniPoly::one();
    for (p, e) in factors {
        let k: u64 = e.abs().try_into().expect("exponent fits in u64");
        if e.is_negative() {
            den = den.mul(&p.pow(k));
        } else {
            num = num.mul(&p.pow(k));
        }
    }
    (num, den)
}

/// `det(zI - ℳ) = ∏ det(zI - M_W)^{e(W)}` with `e = n` and with `e = m`.
pub fn verify_adjacency_factorization(an: &Analysis, w: &Weights, guards: &Guards) -> Result<AdjacencyReport> {
    let g = &an.graph;
    let dim = an.lifted_dim();
    if dim > guards.char_poly_dim {
        return Err(Error::DimensionGuard { dim, limit: guards.char_poly_dim });
    }
    let lhs = char_poly(build_lifted_operator_at(&an.tree_graph, OperatorKind::Adjacency, w, guards.lifted_dim)?.matrix());
    let n_table = athanasiadis_table(g, guards.subset_vertices)?;
    let m_op = build_operator_at(g, OperatorKind::Adjacency, w);
    let mut by_n = Vec::new();
    let mut by_m = Vec::new();
    let mut exponents = Vec::new();
    let mut tables_agree = true;
    for (&set, n) in &n_table {
        let m = an.table.m(set);
        tables_agree &= *n == BigInt::from(m);
        if n.is_zero() && m == 0 {
            continue;
        }
        let p = char_poly(m_op.restrict_vertices(set)?.matrix());
        by_n.push((p.clone(), n.clone()));
        by_m.push((p, BigInt::from(m)));
        exponents.push(ExponentRecord { w: an.labels(set), n: n.to_string(), m });
    }
    let check = |factors: &[(UniPoly, BigInt)]| {
        let (num, den) = signed_product(factors);
        lhs.mul(&den) == num
    };
    let holds_with_n = check(&by_n);
    let holds_with_m = check(&by_m);
    Ok(AdjacencyReport {
        lifted_dim: dim,
        char_poly: lhs.coeffs().iter().map(Rat::to_string).collect(),
        exponents,
        tables_agree,
        holds_with_n,
        holds_with_m,
        holds: tables_agree && holds_with_n && holds_with_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn cycle3() -> DiGraph {
        DiGraph::with_vertex_count(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn triangle() -> DiGraph {
        DiGraph::with_vertex_count(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap()
    }

    fn two_cycle() -> DiGraph {
        DiGraph::with_vertex_count(2, &[(0, 1), (1, 0)]).unwrap()
    }

    fn analysis(g: &DiGraph) -> Analysis {
        Analysis::new(g, &Guards::default()).unwrap()
    }

    #[test]
    fn main_theorem_small_cases() {
        let g = Guards::default();
        let r = verify_main_theorem(&analysis(&cycle3()), 3, 1, false, &g).unwrap();
        assert!(r.holds);
        assert_eq!(r.symbolic, Some(true));
        assert_eq!(r.factors.len(), 1);
        let r = verify_main_theorem(&analysis(&triangle()), 3, 1, false, &g).unwrap();
        assert!(r.holds);
        assert_eq!(r.lifted_dim, 9);
        assert_eq!(r.factors.iter().map(|f| f.w.len() as u64 * f.m).sum::<u64>(), 9);
        assert_eq!(r.symbolic, Some(true));
    }

    #[test]
    fn symbolic_guard_applies_when_forced() {
        let g = Guards { symbolic_dim: 5, ..Guards::default() };
        let err = verify_main_theorem(&analysis(&triangle()), 1, 1, true, &g).unwrap_err();
        assert_eq!(err, Error::SymbolicGuard { dim: 9, limit: 5 });
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_polynomial(&analysis(&cycle3())).unwrap(), MultiPoly::one());
        let t = triangle();
        let an = analysis(&t);
        let mut expected = MultiPoly::one();
        for v in 0..3 {
            expected = &expected * &forest_polynomial(&t, VertexSet::singleton(v)).unwrap();
        }
        assert_eq!(phi_polynomial(&an).unwrap(), expected);
        let w = Weights::unit(&t);
        assert_eq!(phi_at(&an, &w).unwrap(), rat(27));
    }

    #[test]
    fn minors() {
        let g = Guards::default();
        for graph in [cycle3(), two_cycle(), triangle()] {
            let an = analysis(&graph);
            let r = verify_minors(&an, 3, 5, &g).unwrap();
            assert!(r.holds, "{r:?}");
            assert_eq!(r.sign, Some(r.expected_sign));
            assert!(verify_minors_symbolic(&an, &g).unwrap());
        }
        let an = analysis(&cycle3());
        let q = build_lifted_operator(&an.tree_graph, OperatorKind::Laplacian, 2000).unwrap();
        let a = an.tree_graph.trees().iter().position(|t| t.root() == 0).unwrap();
        let minor = det_symbolic(&q.delete(&[Label::Tree(a)]).unwrap().into_matrix().neg(), 10).unwrap();
        assert_eq!(minor, MultiPoly::monomial(crate::algebra::Monomial::product_of([Var::x(1), Var::x(2)]), Rat::one()));
    }

    #[test]
    fn rank_one_route_agrees_with_direct_minors() {
        let k4: Vec<_> = (0..4).flat_map(|s| (0..4).filter(move |&t| t != s).map(move |t| (s, t))).collect();
        let an = analysis(&DiGraph::with_vertex_count(4, &k4).unwrap());
        assert!(an.lifted_dim() > DIRECT_MINOR_LIMIT);
        let r = verify_minors(&an, 1, 9, &Guards::default()).unwrap();
        assert_eq!(r.method, MinorMethod::RankOne);
        assert!(r.holds, "{r:?}");
        let w = an.weights(9, 0);
        let q = build_lifted_operator_at(&an.tree_graph, OperatorKind::Laplacian, &w, 2000).unwrap();
        let phi = phi_at(&an, &w).unwrap();
        for a in [7usize, 33] {
            let direct = det_exact(&q.delete(&[Label::Tree(a)]).unwrap().into_matrix().neg());
            assert_eq!(direct, an.tree_graph.tree(a).weight_at(&w.x) * &phi);
        }
    }

    #[test]
    fn spanning_ratio() {
        let g = Guards::default();
        for graph in [cycle3(), two_cycle(), triangle()] {
            let an = analysis(&graph);
            let r = verify_spanning_ratio(&an, 3, 2, false, &g).unwrap();
            assert!(r.holds);
            assert_eq!(r.method, TreeSumMethod::Enumeration);
        }
        let an = analysis(&triangle());
        assert_eq!(tree_graph_tree_count(&an.tree_graph, 1000).unwrap(), 243);
        let w = an.weights(2, 0);
        let f_g = an.tree_graph.trees().iter().fold(Rat::zero(), |acc, a| acc + a.weight_at(&w.x));
        assert_eq!(tree_graph_tree_sum(&an.tree_graph, &w, &g).unwrap(), phi_at(&an, &w).unwrap() * f_g);
    }

    #[test]
    fn adjacency_factorization() {
        let g = Guards::default();
        let an = analysis(&cycle3());
        let r = verify_adjacency_factorization(&an, &Weights::unit(&an.graph), &g).unwrap();
        assert!(r.holds);
        assert_eq!(r.char_poly, vec!["-1", "0", "0", "1"]);
        let an = analysis(&two_cycle());
        let r = verify_adjacency_factorization(&an, &Weights::unit(&an.graph), &g).unwrap();
        assert_eq!(r.char_poly, vec!["-1", "0", "1"]);
        assert!(r.holds);
        let an = analysis(&triangle());
        let r = verify_adjacency_factorization(&an, &Weights::unit(&an.graph), &g).unwrap();
        assert!(r.holds);
        assert_eq!(r.char_poly.len(), 10);
        let r = verify_adjacency_factorization(&an, &an.weights(4, 1), &g).unwrap();
        assert!(r.holds);
    }
}
