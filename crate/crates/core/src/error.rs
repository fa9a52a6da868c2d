use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax error with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, expected: &[&str], found: impl Into<String>) -> Self {
        ParseError {
            position,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: found.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: expected ", self.position)?;
        match self.expected.as_slice() {
            [] => write!(f, "nothing")?,
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected} coordinates, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("integer overflow in group arithmetic")]
    Overflow,
    #[error("invalid group expression: {0}")]
    InvalidGroup(String),
    #[error("{0} is not lattice ordered")]
    NotLattice(String),
    #[error("unit {0} is not positive")]
    NotPositive(String),
    #[error("{unit} is not a strong unit of {group}")]
    NotStrongUnit { group: String, unit: String },
    #[error("{element} is not a member of {algebra}")]
    NotMember { element: String, algebra: String },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("{lower} is not below {upper}")]
    NotBelow { lower: String, upper: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("window bound must be non-negative, got {0}")]
    NegativeBound(i64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed in `{check}`: {witness}")]
    Verification { check: String, witness: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
}
