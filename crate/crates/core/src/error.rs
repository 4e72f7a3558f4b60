use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}` in ring declaration")]
    DuplicateVariable(String),

    #[error("monomial arity {found} does not match ring arity {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("`{0}` is not a linear form (homogeneous of degree one)")]
    NotLinear(String),

    #[error("generic block has no Verdi generators")]
    GenericBlock,

    #[error("invalid scroll: {0}")]
    InvalidScroll(String),

    #[error("index {index} out of range (1..={len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("hypothesis unmet: {0}")]
    Hypothesis(String),

    #[error("spec failed validation: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("zero vector has no binomial")]
    ZeroVector,

    #[error("invalid lattice basis: {0}")]
    InvalidBasis(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}
