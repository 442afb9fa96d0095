use thiserror::Error;

/// Failures while decoding a graph6 string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed length prefix")]
    BadLength,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("graph6 body too short: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after graph6 body")]
    Trailing(usize),
    #[error("graph has {0} vertices; at most 64 are supported")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("{op} supports at most {max} vertices, got {order}")]
    Capability {
        op: &'static str,
        order: usize,
        max: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("{path}: line {line}: {source}")]
    DeckFile {
        path: String,
        line: usize,
        source: Graph6Error,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_order(op: &'static str, order: usize, max: usize) -> Result<()> {
    if order > max {
        Err(Error::Capability { op, order, max })
    } else {
        Ok(())
    }
}
