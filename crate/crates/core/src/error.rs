use core::fmt;

use crate::algebra::AlgebraKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coefficient or intermediate value was NaN or infinite.
    NonFinite,
    /// Binary operation on elements of different algebras.
    KindMismatch {
        left: AlgebraKind,
        right: AlgebraKind,
    },
    /// Operation not defined for this algebra (e.g. conjugation in type I).
    UnsupportedKind {
        op: &'static str,
        kind: AlgebraKind,
    },
    NotInvertible,
    /// A point on a removed plane or line where a chart or projection is undefined.
    Domain(&'static str),
    /// An argument violates a precondition (unit modulus, sphere membership, ...).
    Precondition(&'static str),
    /// An internal identity failed beyond tolerance.
    Inconsistent {
        what: &'static str,
        residual: f64,
    },
    /// `span{1, v}` is not closed under multiplication.
    NotClosed {
        residual: f64,
    },
    /// Multiplication-table text could not be parsed or is not a unital table.
    Table {
        line: usize,
        msg: alloc::string::String,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => f.write_str("non-finite value"),
            Error::KindMismatch { left, right } => {
                write!(f, "algebra kind mismatch: {left} vs {right}")
            }
            Error::UnsupportedKind { op, kind } => {
                write!(f, "{op} is not defined in the type {kind} algebra")
            }
            Error::NotInvertible => f.write_str("element is not invertible"),
            Error::Domain(msg) => write!(f, "outside the domain: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Inconsistent { what, residual } => {
                write!(f, "internal consistency failure in {what} (residual {residual:e})")
            }
            Error::NotClosed { residual } => {
                write!(f, "span{{1, v}} is not a subalgebra (residual {residual:e})")
            }
            Error::Table { line, msg } => write!(f, "table line {line}: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
