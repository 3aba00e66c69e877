use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: String, found: String },

    #[error("enumeration guard exceeded: {0} ports (limit 8)")]
    EnumerationGuard(usize),

    #[error("malformed wiring: {0}")]
    MalformedWiring(String),

    #[error("context mismatch: expected {expected}, found {found}")]
    ContextMismatch { expected: String, found: String },

    #[error("shell index {index} out of range ({count} shells)")]
    ShellIndex { index: usize, count: usize },

    #[error("operation needs exactly one shell, found {0}")]
    NotSingleShell(usize),

    #[error("malformed split {split} for {len} out ports")]
    MalformedSplit { split: usize, len: usize },

    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("operation needs a nonempty context")]
    EmptyContext,

    #[error("unknown sort `{0}`")]
    UnknownSort(String),

    #[error("unknown relation symbol `{0}`")]
    UnknownRelation(String),

    #[error("ill-formed formula: {0}")]
    IllFormed(String),

    #[error("rewrite precondition violated ({rule}): {reason}")]
    Precondition { rule: &'static str, reason: String },

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("no carrier for sort `{0}`")]
    MissingCarrier(String),

    #[error("hom condition not certified: {0}")]
    Certification(String),

    #[error("morphisms are not parallel: {0}")]
    NotParallel(String),

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
