use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex `{0}`")]
    LoopEdge(String),
    #[error("duplicate edge `{0}` -> `{1}`")]
    DuplicateEdge(String, String),
    #[error("edge endpoint `{0}` is not a vertex")]
    UnknownEndpoint(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("empty vertex name")]
    EmptyVertexName,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a subgraph: {0}")]
    NotASubgraph(String),
    #[error("not an induced subgraph: {0}")]
    NotInducedSubgraph(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("complex caps too small: need {what}")]
    InsufficientCaps { what: String },
    #[error("generator {generator} of the denominator is not in the numerator lattice")]
    NotASublattice { generator: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("basepoint `{0}` is not a vertex")]
    UnknownBasepoint(String),
    #[error("walk endpoints differ: {0}")]
    EndpointMismatch(String),
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("no stabilization up to r = {0}")]
    NoStabilization(usize),
    #[error("budget exceeded after {explored} steps")]
    BudgetExceeded { explored: usize },
    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),
    #[error("not an r-cofibration: {0}")]
    NotACofibration(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
