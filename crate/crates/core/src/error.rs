use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular system")]
    Singular,
    #[error("edge index {index} out of range (graph has {count} edges)")]
    InvalidEdge { index: usize, count: usize },
    #[error("vertex {index} out of range (graph has {count} vertices)")]
    InvalidVertex { index: usize, count: usize },
    #[error("loop at vertex {0}: loops are not allowed")]
    Loop(usize),
    #[error("edge weight must be positive, got {0}")]
    NonPositiveWeight(String),
    #[error("vertex set to identify is empty")]
    EmptyVertexSet,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {vertices} vertices, brute-force enumeration is limited to {limit}")]
    SizeGuard { vertices: usize, limit: usize },
    #[error("parameters out of domain: {0}")]
    Domain(String),
    #[error("network is not series-parallel reducible between {a} and {b}")]
    NotSeriesParallel { a: usize, b: usize },
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("flow has {got} currents but the network has {expected} edges")]
    MissingCurrent { expected: usize, got: usize },
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
