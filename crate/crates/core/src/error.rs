use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("signal lives on group `{found}`, expected `{expected}`")]
    GroupMismatch { expected: String, found: String },
    #[error("field belongs to atlas `{found}`, expected `{expected}`")]
    AtlasMismatch { expected: String, found: String },
    #[error("index ({i}, {j}) out of bounds for dimension {dim}")]
    IndexOutOfBounds { i: usize, j: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("window function is identically zero")]
    ZeroWindow,
    #[error("windows are numerically orthogonal: |<phi,psi>| = {inner:e} <= {threshold:e}")]
    OrthogonalWindows { inner: f64, threshold: f64 },
    #[error("point is not admissible for the periodized model: {0}")]
    Inadmissible(String),
    #[error("every sample node lies on the singular locus")]
    AllNodesSingular,
    #[error("lambda grid is empty")]
    EmptyLambdaGrid,
    #[error("unknown series tag `{0}`")]
    UnknownSeries(String),
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
