use thiserror::Error;

/// Errors surfaced by the library. Predicates that merely answer "no"
/// return `false` or `None`; an `Error` always means the question itself
/// was ill-posed (mismatched spaces, bad indices, malformed input) or a
/// structural precondition failed.
#[derive(Debug, Error)]
pub enum Error {
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("region lies outside the space: {0}")]
    OutOfSpace(String),

    #[error("invalid interval: lower bound {lo} exceeds upper bound {hi}")]
    BadInterval { lo: String, hi: String },

    #[error("index {index} out of range at level {level}: cover has {size} members")]
    IndexOutOfRange {
        level: usize,
        index: usize,
        size: usize,
    },

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("point {0} does not lie in the space")]
    PointOutsideSpace(String),

    #[error("not a cocycle: {0}")]
    NotACocycle(String),

    #[error("incomplete or misaligned cocycle table: {0}")]
    BadTable(String),

    #[error("basic set is empty")]
    EmptyBasicSet,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration cap exceeded: level {level} has {requested} multi-indices, cap is {cap}")]
    CapExceeded {
        level: usize,
        requested: usize,
        cap: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("expected the built-in cover sequence `{0}`")]
    WrongBuiltin(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
