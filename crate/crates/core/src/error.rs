use thiserror::Error;

/// Errors produced while building meshes, elements, systems and solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mesh specification: {0}")]
    InvalidMeshSpec(String),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("degenerate simplex: measure {measure:e} below threshold {threshold:e}")]
    DegenerateSimplex { measure: f64, threshold: f64 },

    #[error("local index {index} out of range (expected < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("duplicate global node index {0} in simplex")]
    DuplicateNode(usize),

    #[error("unsupported element degree r={r} in dimension d={d}")]
    UnsupportedDegree { r: usize, d: usize },

    #[error("singular Vandermonde matrix for r={r}, d={d}")]
    SingularVandermonde { r: usize, d: usize },

    #[error("point outside simplex (smallest barycentric coordinate {0:e})")]
    PointOutsideSimplex(f64),

    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("boundary labels: {0}")]
    Boundary(String),

    #[error("reference solution has zero norm")]
    ZeroNormReference,

    #[error("decomposition: {0}")]
    Decomposition(String),

    #[error("sparse factorization failed: {0}")]
    Factorization(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix of order {n} exceeds the dense spectrum limit {limit}")]
    SpectrumTooLarge { n: usize, limit: usize },

    #[error("eigenvalue computation did not converge")]
    Eigen,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
