use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Uncompletable inputs are not errors; they come back as a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("search budget exceeded: {0}")]
    Budget(String),

    #[error("usage: {0}")]
    Usage(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `graph <n> <delta>` header")]
    MissingHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("distance {distance} outside 1..={delta}")]
    DistanceOutOfRange { distance: u32, delta: u32 },
    #[error("pair {0} {1} given more than once")]
    DuplicateEdge(usize, usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
