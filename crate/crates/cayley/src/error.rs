use thiserror::Error;

/// A syntax error with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] cayley_core::Error),
    #[error("basis index {index} does not exist at level {level}")]
    IndexOutOfRange { index: usize, level: u32 },
    #[error("fractions cannot be mixed with decimal literals")]
    MixedLiterals,
    #[error("decimal literals need the float backend")]
    DecimalInExact,
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Output(std::io::ErrorKind),
}
