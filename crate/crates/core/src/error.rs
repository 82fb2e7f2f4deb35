use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty subset")]
    EmptySubset,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("parallel edge {tail} -> {head}; route multigraphs through subdivision")]
    ParallelEdge { tail: usize, head: usize },
    #[error("subset enumeration limit: {vertices} vertices exceeds {limit}")]
    SubsetLimit { vertices: usize, limit: usize },
    #[error("G has no arborescence")]
    NoArborescence,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("vertex set {0} is not strongly connected")]
    SubsetNotStronglyConnected(String),
    #[error("spanning tree enumeration limit exceeded ({limit} trees)")]
    TreeLimit { limit: usize },
    #[error("tree graph edge limit exceeded ({limit} edges)")]
    EdgeLimit { limit: usize },
    #[error("matrix dimension {dim} exceeds symbolic guard {limit}; use evaluation mode")]
    SymbolicGuard { dim: usize, limit: usize },
    #[error("matrix dimension {dim} exceeds guard {limit}")]
    DimensionGuard { dim: usize, limit: usize },
    #[error("label {0} not present")]
    LabelNotPresent(String),
    #[error("variable {0} missing from assignment")]
    MissingVariable(String),
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("multiplicity depends on the base point: {0}")]
    MultiplicityMismatch(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for the size guards that stop a computation before it runs away.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::SubsetLimit { .. }
                | Error::TreeLimit { .. }
                | Error::EdgeLimit { .. }
                | Error::SymbolicGuard { .. }
                | Error::DimensionGuard { .. }
        )
    }
}
