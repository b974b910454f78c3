use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("target lies outside the column span of the basis")]
    NoSolution,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("field mismatch: F_{0} vs F_{1}")]
    PrimeMismatch(u32, u32),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("structure maps do not commute at vertex {vertex:?} (axes {axes:?})")]
    NotCommutative { vertex: Vec<usize>, axes: (usize, usize) },

    #[error("morphism is not natural at vertex {vertex:?} along axis {axis}")]
    NotNatural { vertex: Vec<usize>, axis: usize },

    #[error("morphism is not injective at vertex {0:?}")]
    NotInjective(Vec<usize>),

    #[error("amplitude `{spec}` cannot be evaluated on {what}")]
    Inapplicable { spec: String, what: String },

    #[error("magnitude needs finite births, got {0}")]
    InfiniteBirth(f64),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid amplitude spec `{0}`")]
    Spec(String),

    #[error("exhaustive matching limited to {limit} bars per side, got {m} x {n}")]
    TooLarge { m: usize, n: usize, limit: usize },

    #[error("unknown check id `{0}`")]
    UnknownId(String),

    #[error("json: {0}")]
    Json(String),

    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
