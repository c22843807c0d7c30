//! Library-wide error type.
//!
//! Each variant name is stable API: the CLI surfaces it verbatim in the
//! JSON `"error"` field, so renaming a variant is a breaking change.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The element has no multiplicative inverse.
    #[error("NonUnit: element is not a unit of its ring")]
    NonUnit,
    /// No canonical ring homomorphism exists between the two descriptors.
    #[error("NoCanonicalHom: no canonical homomorphism between these rings")]
    NoCanonicalHom,
    /// A matrix that must be invertible has non-unit determinant.
    #[error("SingularMatrix: determinant is not a unit")]
    SingularMatrix,
    /// An exhaustive search was requested over an infinite ring.
    #[error("InfiniteRing: operation requires a finite ring")]
    InfiniteRing,
    /// The claimed similarity identity q'(g x) = l q(x) fails.
    #[error("NotASimilarity: similarity identity fails")]
    NotASimilarity,
    /// The claimed map is not a unit-preserving algebra isomorphism.
    #[error("NotAnAlgebraIso: map is not an algebra isomorphism")]
    NotAnAlgebraIso,
    /// The section needs a square root that does not exist in the ring.
    #[error("SquareRootUnavailable: required square root does not exist")]
    SquareRootUnavailable,
    /// The operation is only defined over a field.
    #[error("NotAField: ring is not a field")]
    NotAField,
    /// The field is beyond the exhaustive-search budget (p > 5, or infinite).
    #[error("FieldTooLarge: field exceeds the exhaustive-search bound")]
    FieldTooLarge,
    /// The algebra is not in the image of the specialization map.
    #[error("NotSpecialized: algebra is not a specialized structure")]
    NotSpecialized,
    /// The quadratic form is not semiregular.
    #[error("NotSemiregular: form has non-unit half-discriminant")]
    NotSemiregular,
    /// Malformed textual input (descriptor, element, or coefficient tuple).
    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// The bare variant name, used by the CLI's JSON `"error"` field.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonUnit => "NonUnit",
            Error::NoCanonicalHom => "NoCanonicalHom",
            Error::SingularMatrix => "SingularMatrix",
            Error::InfiniteRing => "InfiniteRing",
            Error::NotASimilarity => "NotASimilarity",
            Error::NotAnAlgebraIso => "NotAnAlgebraIso",
            Error::SquareRootUnavailable => "SquareRootUnavailable",
            Error::NotAField => "NotAField",
            Error::FieldTooLarge => "FieldTooLarge",
            Error::NotSpecialized => "NotSpecialized",
            Error::NotSemiregular => "NotSemiregular",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
