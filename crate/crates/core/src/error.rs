//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("signature error: {0}")]
    Signature(String),
    #[error("algebra validation failed:\n{0}")]
    Validation(#[from] crate::algebra::ValidationReport),
    #[error("signatures do not match")]
    SignatureMismatch,
    #[error("one algebra is ordered and the other is not")]
    OrderMismatch,
    #[error("morphism is not surjective")]
    NotSurjective,
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("ordered quotient rejected: generated order identifies `{0}` and `{1}`")]
    QuotientNotAntisymmetric(String, String),
    #[error("quotient undefined on guarded operation `{0}`: no composable representatives")]
    QuotientGuardUndefined(String),
    #[error("carrier size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("operation `{0}` is not associative on this algebra")]
    NotAssociative(String),
    #[error("ill-sorted term: {0}")]
    IllSorted(String),
    #[error("no value for variable `{0}`")]
    MissingVariable(String),
    #[error("inequation against an unordered algebra")]
    Unordered,
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("monad law `{law}` fails at {witness}")]
    LawViolation { law: String, witness: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
