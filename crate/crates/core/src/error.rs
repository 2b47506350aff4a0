use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("party count {0} is outside the supported range")]
    PartyCount(usize),
    #[error("dense vectors over {parties} parties exceed the limit of {limit}")]
    DenseCap { parties: usize, limit: usize },
    #[error("invalid subsystem: {0}")]
    InvalidSubsystem(String),
    #[error("cardinality {k} outside 1..={max}")]
    Cardinality { k: usize, max: usize },
    #[error("ambient mismatch: expected {expected} parties, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Graph validation failures. Each violation class is a separate variant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("color {0} unused")]
    UnusedColor(usize),
    #[error("negative weight {weight} on edge #{edge} ({u}, {v})")]
    NegativeWeight {
        edge: usize,
        u: String,
        v: String,
        weight: String,
    },
    #[error("self-loop on vertex {vertex:?} (edge #{edge})")]
    SelfLoop { edge: usize, vertex: String },
    #[error("edge #{edge} references unknown vertex {vertex:?}")]
    UnknownVertex { edge: usize, vertex: String },
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("vertex {vertex:?} has color {color} outside 1..={max}")]
    ColorOutOfRange {
        vertex: String,
        color: usize,
        max: usize,
    },
    #[error("invalid weight on edge #{edge}: {detail}")]
    BadWeight { edge: usize, detail: String },
}
