use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop rejected at vertex {0}")]
    SelfLoop(u64),

    #[error("parallel edge rejected: {0} {1}")]
    ParallelEdge(u64, u64),

    #[error("asymmetric adjacency: {0} lists {1} but not vice versa")]
    AsymmetricAdjacency(u64, u64),

    #[error("vertex id {id} out of range (n = {n})")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("instance too large for this operation: {0}")]
    CapExceeded(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid reweighting: {0}")]
    InvalidReweighting(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("infeasible certificate: worst slack {0}")]
    InfeasibleCertificate(f64),

    #[error("rotation system invalid: {0}")]
    InvalidRotation(String),

    #[error("not a triangulation: {0}")]
    NotTriangulated(String),

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sample budget exhausted: {0}")]
    SampleBudget(String),

    #[error("cutter failed on a {n}-vertex subgraph: {source}")]
    CutterFailed {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("document error: {0}")]
    Document(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
