use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed rational-function text; `column` is 1-based within the literal.
    Parse { column: usize, message: String },
    UnknownVariable(String),
    UnassignedVariable(String),
    /// A denominator vanished at an evaluation point.
    Pole(String),
    DivisionByZero,
    /// A tensor failed a symmetry it was required to have.
    Symmetry(String),
    DimensionMismatch(String),
    /// A linear system that was required to be solvable had no solution.
    NoSolution(String),
    Singular(String),
    Unsupported(String),
    /// The input is valid but the requested structure does not apply to it.
    Precondition(String),
    /// An internal consistency check failed; indicates a bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { column, message } => write!(f, "parse error at column {column}: {message}"),
            Error::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Error::UnassignedVariable(v) => write!(f, "no value assigned to variable `{v}`"),
            Error::Pole(s) => write!(f, "pole: {s}"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::Symmetry(s) => write!(f, "symmetry violated: {s}"),
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::NoSolution(s) => write!(f, "no solution: {s}"),
            Error::Singular(s) => write!(f, "singular: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::Precondition(s) => write!(f, "precondition failed: {s}"),
            Error::Internal(s) => write!(f, "internal error: {s}"),
        }
    }
}

impl core::error::Error for Error {}
