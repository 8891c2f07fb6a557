use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown character {ch:?} at position {pos}")]
    UnknownChar { pos: usize, ch: char },

    #[error("variable `{0}` does not belong to this ring")]
    ForeignVariable(String),

    #[error("operands live in different polynomial rings")]
    MixedContext,

    #[error("polynomials are not homogeneous of one common degree")]
    MixedDegree,

    #[error("ideal is not equigenerated; minimal generator counts are only computed for equigenerated ideals")]
    NotEquigenerated,

    #[error("index out of bounds: {0}")]
    Bounds(String),

    #[error("minor index sets differ in size ({rows} rows, {cols} columns)")]
    NonSquare { rows: usize, cols: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid tree: {0}")]
    Tree(#[from] TreeError),

    #[error("invalid semigroup: {0}")]
    Semigroup(String),

    #[error("resource guard: {needed} terms exceed the cap of {cap}")]
    Resource { needed: usize, cap: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("edge list is empty")]
    Empty,
    #[error("malformed edge `{0}` (expected `i-j`)")]
    Malformed(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} closes a cycle")]
    Cycle(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} outside 1..={n}")]
    VertexRange { vertex: usize, n: usize },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
