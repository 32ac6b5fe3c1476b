use thiserror::Error;

use crate::grlin::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    InvalidField(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("duplicate basis element `{0}`")]
    DuplicateBasis(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("map of degree {degree} sends `{element}` outside degree {expected}")]
    DegreeViolation {
        element: String,
        degree: i64,
        expected: i64,
    },
    #[error("differential does not square to zero: {0}")]
    NotAComplex(String),
    #[error("arity {requested} exceeds arity bound {bound}")]
    ArityOverflow { requested: usize, bound: usize },
    #[error("input is not a dg algebra: {0}")]
    NotDga(String),
    #[error("algebra is not concentrated in degree 0")]
    NotDegreeZero,
    #[error("weak A-infinity structure (nonzero b_0) has no homology with respect to b_1")]
    WeakStructure,
    #[error("contraction identity fails: {0}")]
    ContractionFailed(String),
    #[error("missing augmentation: {0}")]
    MissingAugmentation(String),
    #[error("bar differential does not square to zero: Stasheff identity {arity} fails on {word}")]
    BarNotDifferential { arity: usize, word: String },
    #[error("not a twisting cochain: {0}")]
    NotTwisting(String),
    #[error("relation is not contained in V tensor V: {0}")]
    NotQuadratic(String),
    #[error("quotient algebra is not finite dimensional within nilpotency bound {0}")]
    InfiniteAlgebra(usize),
    #[error("relation `{0}` is not a combination of parallel composable paths")]
    NonComposableRelation(String),
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
