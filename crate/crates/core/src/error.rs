use thiserror::Error;

/// Errors produced by graph construction, solvers and the query pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate result id `{0}`")]
    DuplicateId(String),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("result `{0}` has a negative or non-comparable score")]
    InvalidScore(String),

    #[error("self-loop on `{0}`")]
    SelfLoop(String),

    #[error("k must be at least 1")]
    InvalidK,

    #[error("solution tables have different capacities ({left} vs {right})")]
    CapacityMismatch { left: usize, right: usize },

    #[error("graph is disconnected; decompose into components first")]
    Disconnected,

    #[error("graph has no cut points")]
    NoCutPoints,

    #[error("graph has {nodes} nodes; brute force is limited to {limit}")]
    GraphTooLarge { nodes: usize, limit: usize },

    #[error("search deadline exceeded")]
    Timeout,

    #[error("search heap exceeded {limit} entries")]
    HeapLimit { limit: usize },

    #[error("result generator broke its contract: {0}")]
    GeneratorContract(String),

    #[error("unknown document `{0}`")]
    UnknownDocument(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
