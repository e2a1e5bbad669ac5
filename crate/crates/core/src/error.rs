use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("index {index} out of range for {len} variables")]
    Index { index: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("invalid structure constants: {0}")]
    Structure(String),
    #[error("function space not closed: {0}")]
    Closure(String),
    #[error("polynomial is not in the admissible function space")]
    NotInSpace,
    #[error("inverse iteration did not terminate")]
    InverseFailed,
    #[error("epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("group element is not on the grid lattice")]
    OffLattice,
    #[error("phase-space side mismatch: expected {expected}, got {got}")]
    Side { expected: &'static str, got: &'static str },
    #[error("window vector is zero")]
    ZeroWindow,
    #[error("window vector is not normalized (norm {0})")]
    Unnormalized(f64),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid exponent: {0}")]
    Exponent(String),
    #[error("quantization deviation {0:e} exceeds the adjoint threshold")]
    Deviation(f64),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
