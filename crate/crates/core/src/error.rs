//! Error type shared across the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rational construction with a zero denominator.
    ZeroDenominator,
    /// A string that does not parse as `p` or `p/q`.
    InvalidRational(String),
    /// Two objects that must share a dimension do not.
    DimMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    /// A matrix that must be square is not.
    NotSquare { rows: usize, cols: usize },
    /// Malformed construction input: entry counts, ragged rows, tensor shape.
    BadShape { context: &'static str },
    /// The declared unit fails `u e_i = e_i u = e_i` at basis index `index`.
    BadUnit { index: usize },
    /// Operation requires a unital algebra.
    MissingUnit { algebra: String },
    /// A map triple that must be a {g,h}-derivation is not.
    NotGhDerivation,
    /// The characterizing triple at index `index` fails the {g,h}-derivation check.
    CharTripleNotGh { index: usize },
    /// A system that must be a higher derivation first fails at `level`.
    NotHigherDerivation { level: usize },
    /// Requested order exceeds the available truncation order.
    OrderOutOfRange { n: usize, max: usize },
    /// An argument that must be at least 1 was 0.
    NotPositive { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "rational with zero denominator"),
            Error::InvalidRational(s) => write!(f, "invalid rational literal {s:?}"),
            Error::DimMismatch {
                context,
                expected,
                found,
            } => write!(
                f,
                "dimension mismatch in {context}: expected {expected}, found {found}"
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::BadShape { context } => write!(f, "malformed input in {context}"),
            Error::BadUnit { index } => write!(
                f,
                "declared unit fails the unit axiom at basis index {index}"
            ),
            Error::MissingUnit { algebra } => {
                write!(f, "algebra {algebra:?} has no unit")
            }
            Error::NotGhDerivation => write!(f, "map triple is not a {{g,h}}-derivation"),
            Error::CharTripleNotGh { index } => write!(
                f,
                "characterizing triple at index {index} is not a {{g,h}}-derivation"
            ),
            Error::NotHigherDerivation { level } => write!(
                f,
                "system is not a higher derivation: first violation at level {level}"
            ),
            Error::OrderOutOfRange { n, max } => {
                write!(f, "order {n} out of range: truncation order is {max}")
            }
            Error::NotPositive { what } => write!(f, "{what} must be at least 1"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
