use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {level} needs {expected} coefficients, got {found}")]
    LengthMismatch { level: u32, expected: usize, found: usize },
    #[error("operands live at different levels ({left} and {right})")]
    LevelMismatch { left: u32, right: u32 },
    #[error("level {level} exceeds the cap of {max}")]
    LevelTooLarge { level: u32, max: u32 },
    #[error("expected {expected} operands, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero has no inverse")]
    NotInvertible,
    #[error("{0} is not representable exactly; use the float backend")]
    Irrational(&'static str),
    #[error("{what} is not supported at level {level}")]
    Unsupported { level: u32, what: &'static str },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("constant term does not lie in the subalgebra generated by the linear coefficient")]
    NotInSubalgebra,
    #[error("candidate failed substitution check: {0}")]
    VerificationFailed(&'static str),
}
