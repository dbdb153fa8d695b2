use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular substitution")]
    SingularSubstitution,
    #[error("symbol of the zero function is undefined")]
    SymbolOfZero,
    #[error("incomplete presentation: no rule for the pair {0} {1}")]
    IncompletePresentation(String, String),
    #[error("invalid rule for {lhs}: {reason}")]
    InvalidRule { lhs: String, reason: String },
    #[error("invalid generator set: {0}")]
    InvalidAlphabet(String),
    #[error("termination guard tripped after {0} rewrite steps")]
    TerminationGuard(usize),
    #[error("non-generic parameter: {0}")]
    NonGeneric(String),
    #[error("not scalar: {0}")]
    NotScalar(String),
    #[error("presentation format error on line {line}: {msg}")]
    PresentationFormat { line: usize, msg: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
