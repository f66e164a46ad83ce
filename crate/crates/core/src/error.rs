use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed argument (sizes, ranges, unparseable values).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Two local objects that must share a place do not.
    #[error("place mismatch: {0} vs {1}")]
    PlaceMismatch(u64, u64),

    /// A documented precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("validation error at line {line}: {msg}")]
    ValidationAt { line: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("Hasse bound violated at prime {prime}: a_p = {trace}")]
    HasseViolation { prime: u64, trace: i64 },

    #[error("prime {0} is not usable for curve {1} (bad reduction or p <= 3)")]
    BadPrime(u64, String),

    #[error("cache corrupt: {0}")]
    CacheCorrupt(String),

    #[error("empty sample: {0}")]
    EmptySample(String),

    #[error("checkpoint {0} beyond covered range {1}")]
    Truncation(u64, u64),

    #[error("missing central-character value for prime {0}")]
    MissingCharacter(u64),

    /// A finite-data theorem failed; this is an internal assertion, not a
    /// data problem.
    #[error("sandwich violation on {side} side, margin {margin}")]
    SandwichViolation { side: &'static str, margin: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
