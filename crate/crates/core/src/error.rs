use thiserror::Error;

/// Errors produced by the library.
///
/// Budget exhaustion is its own variant so callers never confuse an
/// unfinished search with a negative answer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("{what}: size {size} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("search budget of {0} steps exhausted")]
    BudgetExhausted(u64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("weight function is not normal: total weight is {0}")]
    NotNormal(String),
    #[error("balance ratio {0} is outside [1/2, 1)")]
    BadRatio(String),
    #[error("vertex {0} has no neighbor on the path")]
    NoNeighborOnPath(usize),
    #[error("path of length {len} is shorter than the required {need}")]
    PathTooShort { len: usize, need: usize },
    #[error("separation is degenerate: N[X] covers every vertex")]
    DegenerateSeparation,
    #[error("graph is not chordal; chordless cycle {cycle:?}")]
    NotChordal { cycle: Vec<usize> },
    #[error("no connected subgraph of G - {{x1,x2,x3}} attaches to all three vertices")]
    NoConnector,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
