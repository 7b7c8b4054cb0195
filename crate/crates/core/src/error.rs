use alloc::string::String;
use core::fmt;

/// Errors raised by the decision procedures and constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two transformations (or a transformation and a semigroup) disagree on degree.
    DegreeMismatch { expected: usize, found: usize },
    /// A transformation or point set refers to a point outside `0..degree`.
    PointOutOfRange { point: u32, degree: usize },
    /// Degree zero is not a valid transformation degree.
    ZeroDegree,
    /// An operation that needs at least one generator received none.
    NoGenerators,
    /// A tuple search would exceed the configured state budget.
    StateBudgetExceeded { states: u128, cap: u64 },
    /// Element enumeration produced more than `cap` elements.
    ElementCapExceeded { cap: usize },
    /// A caller-side precondition of an operation does not hold.
    Precondition(String),
    /// Malformed quasi-identity text.
    Syntax { position: usize, message: String },
    /// Unknown property or preset name.
    UnknownName(String),
    /// An internal consistency check failed; signals a bug, never bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            Error::PointOutOfRange { point, degree } => {
                write!(f, "point {} out of range 1..={degree}", u64::from(*point) + 1)
            }
            Error::ZeroDegree => f.write_str("degree must be positive"),
            Error::NoGenerators => f.write_str("at least one generator is required"),
            Error::StateBudgetExceeded { states, cap } => {
                write!(f, "tuple search needs {states} states, budget is {cap}")
            }
            Error::ElementCapExceeded { cap } => {
                write!(f, "semigroup has more than {cap} elements")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Syntax { position, message } => {
                write!(f, "syntax error at column {}: {message}", position + 1)
            }
            Error::UnknownName(name) => write!(f, "unknown name `{name}`"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
