use std::fmt;

use thiserror::Error;

/// Which resource cap of a [`crate::Budget`] was exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResourceKind {
    BasisSize,
    CoefficientBits,
    WallClock,
}

impl fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResourceKind::BasisSize => write!(f, "basis size"),
            ResourceKind::CoefficientBits => write!(f, "coefficient bit length"),
            ResourceKind::WallClock => write!(f, "wall clock"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials live over different variable sets")]
    VariableSetMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("resource limit exceeded ({kind}): {detail}")]
    ResourceLimit { kind: ResourceKind, detail: String },

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("nongeneric data: {0}")]
    NonGenericData(String),

    #[error("genericity failure, increase coefficient range: {0}")]
    GenericityFailure(String),

    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),

    #[error("no separating linear form found after {0} attempts")]
    NonSeparating(usize),

    #[error("multiple root detected: {0}")]
    MultipleRoot(String),

    #[error("count mismatch: {0}")]
    CountMismatch(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
