//! Library error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two vectors that must have equal length do not.
    LengthMismatch { left: usize, right: usize },
    /// An index argument is outside `1..=n`.
    IndexOutOfRange { index: usize, len: usize },
    /// A set argument that must be nonempty is empty.
    EmptySet,
    /// A vector that must be nonnegative has a negative entry.
    NegativeEntry { index: usize, value: f64 },
    /// A vector that must have decreasing entries does not.
    NotDecreasing { index: usize },
    /// Elements of two different algebras were combined.
    AlgebraMismatch,
    /// An operation was requested on an algebra kind it is not defined for.
    WrongAlgebraKind { expected: &'static str },
    /// Matrix or coordinate dimensions do not match the algebra.
    DimensionMismatch { expected: usize, got: usize },
    /// A matrix parameter that must be symmetric/Hermitian is not.
    NotSymmetric,
    /// A matrix is singular or too ill-conditioned to invert.
    SingularMatrix { condition: f64 },
    /// A frame failed its idempotent/orthogonality/completeness checks.
    InvalidFrame { detail: String },
    /// A closed form was requested for a map whose positivity is not certified.
    PositivityNotCertified,
    /// A scalar function handle failed the sublinearity/nonnegativity probe.
    NotSublinear { detail: String },
    /// Hölder exponents do not satisfy 1/p = 1/r + 1/s.
    ExponentMismatch,
    /// Invalid norm order (must be >= 1).
    InvalidNormOrder { r: f64 },
    /// Malformed input description (bad coordinates, bad parameters, ...).
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { left, right } => {
                write!(f, "vector length mismatch: {left} vs {right}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range 1..={len}")
            }
            Error::EmptySet => write!(f, "set argument must be nonempty"),
            Error::NegativeEntry { index, value } => {
                write!(f, "negative entry {value} at position {index}")
            }
            Error::NotDecreasing { index } => {
                write!(f, "entries not decreasing at position {index}")
            }
            Error::AlgebraMismatch => write!(f, "elements belong to different algebras"),
            Error::WrongAlgebraKind { expected } => {
                write!(f, "operation requires algebra kind: {expected}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotSymmetric => write!(f, "matrix parameter must be symmetric/Hermitian"),
            Error::SingularMatrix { condition } => {
                write!(f, "matrix is singular or ill-conditioned (cond ~ {condition:.3e})")
            }
            Error::InvalidFrame { detail } => write!(f, "invalid Jordan frame: {detail}"),
            Error::PositivityNotCertified => {
                write!(f, "closed form requires a certified-positive map")
            }
            Error::NotSublinear { detail } => {
                write!(f, "function fails sublinear/nonnegative probe: {detail}")
            }
            Error::ExponentMismatch => write!(f, "exponents must satisfy 1/p = 1/r + 1/s"),
            Error::InvalidNormOrder { r } => write!(f, "norm order must be >= 1, got {r}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
