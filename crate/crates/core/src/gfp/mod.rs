//! Generalized Fibonacci polynomial families: the shipped registry,
//! recurrence-based generation and the Binet closed forms.

mod binet;
mod registry;
mod sequence;

use thiserror::Error;

pub use binet::{binet_term, check_family, roots_of, Check, FamilyReport};
pub use registry::{
    discriminant, family, pair, pairs, registry, registry_violations, FamilyPair, FamilySpec, Kind,
};
pub use sequence::SequenceCache;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfpError {
    #[error("negative index {0}")]
    NegativeIndex(i64),
    #[error("{family}: closed form at n = {n} has a nonzero radical part")]
    NonZeroRadicalPart { family: String, n: i64 },
    #[error("{family}: division by alpha at n = {n} leaves fractional coefficients")]
    InexactAlphaDivision { family: String, n: i64 },
}
