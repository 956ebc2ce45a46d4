use thiserror::Error;

/// Errors raised by the learner calculus and its supporting layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("boundary mismatch in {context}: expected {expected}, found {found}")]
    BoundaryMismatch {
        context: String,
        expected: String,
        found: String,
    },

    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),

    #[error("element `{element}` is not a member of {set}")]
    UnknownElement { element: String, set: String },

    #[error("function is not total: no image for `{0}`")]
    NotTotal(String),

    #[error("search bound {bound} is smaller than parameter set of size {size}")]
    BoundTooSmall { bound: usize, size: usize },

    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown object generator `{0}`")]
    UnknownObject(String),

    #[error("cannot compose: codomain [{left}] does not match domain [{right}]")]
    TypeMismatch { left: String, right: String },

    #[error("no interpretation for `{0}`")]
    MissingInterpretation(String),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    Dimension {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn mismatch(
    context: impl Into<String>,
    expected: impl std::fmt::Display,
    found: impl std::fmt::Display,
) -> Error {
    Error::BoundaryMismatch {
        context: context.into(),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
