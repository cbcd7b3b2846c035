use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parameters violate 0 < lambda < mu < 1, lambda + mu > 1: {0}")]
    OutsideRegion(String),

    #[error("division by an interval containing zero: {0}")]
    DivisionByZeroInterval(String),

    #[error("map is not a contraction on some axis")]
    NotContracting,

    #[error("depth {requested} exceeds cap {cap} (raise AFFINE_TOP_MAX_DEPTH to override)")]
    CapExceeded { requested: u32, cap: u32 },

    #[error("curve error: {0}")]
    Curve(String),

    #[error("degenerate bounding box: {0}")]
    DegenerateBox(String),

    #[error("dimension equation has no sign change on the bracket: {0}")]
    NoSignChange(String),

    #[error("certificate check failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
