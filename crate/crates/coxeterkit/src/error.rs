use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum CoxError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector is not a unit spacelike normal (form value {value})")]
    NonUnitNormal { value: f64 },

    #[error("spacelike vector cannot be normalized to a point (form value {value})")]
    SpacelikePoint { value: f64 },

    #[error("point operation requires a Lorentzian form")]
    NotLorentzian,

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("node index {index} out of range 1..={count}")]
    NodeOutOfRange { index: usize, count: usize },

    #[error("edge {0}-{1} declared twice")]
    DuplicateEdge(usize, usize),

    #[error("invalid edge mark: {0}")]
    BadMark(String),

    #[error("diagram is disconnected; classify each connected component separately")]
    Disconnected,

    #[error("diagram does not match any catalog family although its signature is {0}; catalog and signature disagree")]
    CatalogMismatch(String),

    #[error("catalog file error: {0}")]
    Catalog(String),

    #[error("matrix is not a valid non-obtuse Gram matrix: {0}")]
    BadGram(String),

    #[error("{0}")]
    Numerical(String),

    #[error("orbit exceeded cap of {cap} points (partial count {partial})")]
    OrbitCapExceeded { cap: usize, partial: usize },

    #[error("invalid ring specification: {0}")]
    BadRings(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported export: {0}")]
    Export(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for CoxError {
    fn from(e: std::io::Error) -> Self {
        CoxError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CoxError>;
