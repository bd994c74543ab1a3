use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("expected {expected} words, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u8, right: u8 },

    #[error("curves share boundary point {0}")]
    NonTransverse(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("slot {slot} is not primitive on the {side} side")]
    NotDoublyPrimitive { slot: String, side: String },

    #[error("slots {0} and {1} are not disjoint")]
    NotDisjoint(String, String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("operation requires family {expected}, got {got}")]
    WrongFamily { expected: String, got: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}
