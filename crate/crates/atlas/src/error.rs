use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: String, rank: usize },
    #[error("roots {0} and {1} are proportional")]
    ProportionalRoots(String, String),
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("root system {0} is not reduced")]
    NonReducedSystem(String),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("dimension mismatch for {name}: declared {declared}, computed {computed}")]
    DimensionMismatch {
        name: String,
        declared: u64,
        computed: u64,
    },
    #[error("simple roots {0} and {1} are adjacent")]
    AdjacentRoots(usize, usize),
    #[error("unknown space: {0}")]
    UnknownSpace(String),
    #[error("no theorem-backed verdict for {space}, j = {j}")]
    UnknownConfiguration { space: String, j: usize },
    #[error("real hyperbolic spaces have no nilpotent-construction moduli")]
    RHHasNoNCModuli,
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("injectivity violated: {0}")]
    InjectivityViolation(String),
    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),
    #[error("spectrum mismatch: {0}")]
    SpectrumMismatch(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("independent computations disagree: {0}")]
    CrossCheck(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
