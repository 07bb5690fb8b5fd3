use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid identifier {0:?}: ids must be nonempty and contain no whitespace")]
    InvalidId(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("empty edge in a fresh board")]
    EmptyEdge,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("board has {got} vertices; the game engine supports at most {max}")]
    TooManyVertices { got: usize, max: usize },
    #[error("edge size bound {k} is below the board rank {rank}")]
    RankExceeded { rank: usize, k: usize },
    #[error("invalid geography instance: {0}")]
    InvalidInstance(String),
    #[error("node budget of {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    /// Raised inside parallel searches once a sibling has decided the root;
    /// never returned by public functions.
    #[error("search cancelled")]
    Cancelled,
    #[error("strategy has no answer: {0}")]
    Uncovered(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
