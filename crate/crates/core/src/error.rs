use thiserror::Error;

/// Errors raised by tensor-train construction, arithmetic and search.
#[derive(Debug, Error)]
pub enum TtError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("index {index} out of range for mode {mode} of size {size}")]
    IndexOutOfRange { mode: usize, index: usize, size: usize },

    #[error("core {core}: {reason}")]
    InvalidCore { core: usize, reason: String },

    #[error("core {core}: left rank {left} exceeds mode size times right rank ({rows})")]
    RankDeficient { core: usize, left: usize, rows: usize },

    #[error("core {core} is not right-orthogonal (Gram residual {residual:.3e})")]
    NotOrthogonal { core: usize, residual: f64 },

    #[error("zero probability mass: {0}")]
    ZeroMass(String),

    #[error("resource budget exceeded: {what} needs {requested} elements, limit is {limit}")]
    Budget { what: &'static str, requested: u128, limit: u128 },

    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),

    #[error("point outside the grid domain: {0}")]
    OutOfDomain(String),

    #[error("malformed tensor file: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl TtError {
    /// True for errors caused by exceeding a memory/element budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, TtError::Budget { .. })
    }
}

pub type Result<T, E = TtError> = std::result::Result<T, E>;
