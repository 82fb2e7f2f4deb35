//! Exact-arithmetic workbench for the tree graph `TG` of a directed graph `G`.
//!
//! The vertices of `TG` are the oriented spanning trees of `G`; an edge joins
//! a tree to the tree obtained by adding an out-edge at its root and deleting
//! the out-edge of that edge's target. Schrödinger operators `L = Q + Y` on `G`
//! lift to `TG`, and the determinant of the lift factors over strongly
//! connected subsets of `G` with multiplicities given by an ordered
//! exploration of `G`. This crate builds every object involved and checks the
//! identities against brute-force oracles.

pub mod algebra;
pub mod digraph;
pub mod error;
pub mod exploration;
pub mod factorization;
pub mod fixtures;
pub mod multiedge;
pub mod operators;
pub mod spanning;
pub mod treegraph;

pub use error::{Error, Result};

/// Size limits applied before any exhaustive enumeration or dense algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest vertex count for which all `2^|V|` subsets are enumerated.
    pub subset_vertices: usize,
    /// Largest number of spanning trees enumerated.
    pub max_trees: usize,
    /// Largest number of edges stored in a tree graph.
    pub max_tree_graph_edges: usize,
    /// Largest dimension for symbolic (polynomial) determinants.
    pub symbolic_dim: usize,
    /// Largest dimension of a materialized lifted operator.
    pub lifted_dim: usize,
    /// Largest lifted dimension for exact characteristic polynomials.
    pub char_poly_dim: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            subset_vertices: 14,
            max_trees: 1_000_000,
            max_tree_graph_edges: 1_000_000,
            symbolic_dim: 10,
            lifted_dim: 2000,
            char_poly_dim: 300,
        }
    }
}
