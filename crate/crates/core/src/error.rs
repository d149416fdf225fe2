use std::fmt;

use crate::scalar::Domain;

/// Data-dependent failures surfaced by the library.
///
/// Structural misuse (mixing domains in one arithmetic call, shape
/// mismatches in matrix operations, scaling by a non-central scalar)
/// panics instead; those are programmer errors, not data errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Attempted to build a prime field with a composite or unit modulus.
    NotPrime(u64),
    /// Inversion of zero.
    ZeroInverse,
    /// An operation that requires a nilpotent matrix got a non-nilpotent one.
    NotNilpotent,
    /// The characteristic polynomial does not split into linear factors
    /// over the base field; the unfactored part is carried for diagnostics.
    NonSplitSpectrum { remaining: String },
    /// The operation is not defined over this scalar domain.
    UnsupportedDomain { op: &'static str, domain: Domain },
    /// The two matrices do not commute.
    NotCommuting,
    /// The matrix is nilpotent but has more than one Jordan block.
    NotIndecomposable,
    /// The given matrices do not span a multiplicatively closed algebra.
    NotClosed,
    /// Exact characteristic-polynomial computation is capped at small sizes.
    DimensionTooLarge { dim: usize, max: usize },
    /// Square matrix with no two-sided inverse.
    NotInvertible,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ZeroInverse => write!(f, "zero has no inverse"),
            Error::NotNilpotent => write!(f, "matrix is not nilpotent"),
            Error::NonSplitSpectrum { remaining } => {
                write!(
                    f,
                    "spectrum does not split over the base field; unfactored part: {remaining}"
                )
            }
            Error::UnsupportedDomain { op, domain } => {
                write!(f, "{op} is not supported over {domain}")
            }
            Error::NotCommuting => write!(f, "matrices do not commute"),
            Error::NotIndecomposable => write!(f, "matrix has more than one Jordan block"),
            Error::NotClosed => write!(f, "span is not closed under multiplication"),
            Error::DimensionTooLarge { dim, max } => {
                write!(f, "matrix dimension {dim} exceeds the supported bound {max}")
            }
            Error::NotInvertible => write!(f, "matrix is not invertible"),
        }
    }
}

impl std::error::Error for Error {}
