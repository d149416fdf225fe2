//! Exact-arithmetic matrix centralizers.
//!
//! The crate computes the centralizer of a nilpotent (or split-spectrum)
//! matrix two independent ways — as the raw commutant, the nullspace of
//! B -> AB - BA, and as a structured algebra of window-truncated
//! polynomial matrices read off a Jordan base — and cross-checks the two
//! against a closed dimension formula. On top of that it reports the
//! radical/semisimple structure of the centralizer, its PI-degree, and
//! verifies standard and product polynomial identities by exact
//! evaluation.
//!
//! Supported coefficient domains: the rationals, prime fields, and the
//! rational quaternions. All arithmetic is exact; there are no floats
//! anywhere.

pub mod centralizer;
pub mod cli;
pub mod error;
pub mod identities;
pub mod jordan;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod structure;

pub use error::Error;
pub use matrix::Matrix;
pub use poly::Poly;
pub use scalar::{Domain, Prime, Scalar};
