use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("no vertices")]
    NoVertices,

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),

    #[error("arrow `{arrow}` references undeclared vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    /// An element, path or relation does not live in the quiver it is used with.
    #[error("quiver mismatch: {0}")]
    QuiverMismatch(String),

    #[error("malformed relation: {0}")]
    MalformedRelation(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("enumeration bound exceeded: {0}")]
    EnumerationBound(String),

    #[error("no stabilization within length bound {bound}; the algebra may be infinite-dimensional, try a larger bound")]
    NoStabilization { bound: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
