use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("empty vertex name")]
    EmptyVertexName,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-edge at `{0}` (use a loop instead)")]
    SelfEdge(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("unknown edge index {0}")]
    UnknownEdge(usize),
    #[error("unknown loop id {0}")]
    UnknownLoop(usize),
    #[error("the count function is undefined on the empty set")]
    EmptySet,
    #[error("brute force bound exceeded: {size} elements > bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("missing coordinate for {0}")]
    MissingCoordinate(String),
    #[error("loop {0} has zero normal vector")]
    ZeroLoopNormal(usize),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("graph has loops; expected a simple graph")]
    HasLoops,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
