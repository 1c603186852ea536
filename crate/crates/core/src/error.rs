use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("orientation does not match the graph: {0}")]
    OrientationMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Input larger than a configured exact-search or oracle limit.
    #[error("{what}: size {size} exceeds limit {limit}")]
    LimitExceeded { what: &'static str, size: usize, limit: usize },
    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),
    /// A proven invariant failed to hold; always a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
