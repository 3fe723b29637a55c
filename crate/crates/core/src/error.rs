use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("unsupported aggregation mode: {0}")]
    UnsupportedMode(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Vertex ids in this variant are 1-based, as shown to users.
    #[error("vertex {vertex} is isolated; undirected entropy needs every vertex to have a neighbour")]
    IsolatedVertex { vertex: usize },

    #[error("empty domain: {0}")]
    EmptyDomain(String),

    #[error("non-finite walk aggregate at vertex {vertex} (walk length {length})")]
    NonFiniteAggregate { vertex: usize, length: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("parse error at byte {offset}: {message}")]
    ParseBytes { offset: usize, message: String },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with file context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::File { source, .. } => source.root(),
            other => other,
        }
    }
}
