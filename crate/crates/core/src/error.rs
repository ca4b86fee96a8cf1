use alloc::string::String;

use crate::monomial::Ambient;

/// Errors raised by the core constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Two monomials (or matrices) over different polynomial rings were combined.
    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch {
        /// Ambient of the left operand.
        left: Ambient,
        /// Ambient of the right operand.
        right: Ambient,
    },
    /// `quotient(a, b)` was asked for with `b` not dividing `a`.
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible {
        /// Rendered dividend.
        dividend: String,
        /// Rendered divisor.
        divisor: String,
    },
    /// An exponent or coefficient left the machine-integer range.
    #[error("arithmetic overflow")]
    Overflow,
    /// Weighting, labeling or face data violates its invariants.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Matrix shapes do not compose.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// Homology was requested for the empty complex.
    #[error("complex is empty")]
    EmptyComplex,
    /// A chain map or isomorphism could not be matched against a basis.
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
