//! Exact generation of generalized Fibonacci polynomials and mechanical
//! verification of identities relating equivalent Fibonacci-type and
//! Lucas-type families.
//!
//! - [`poly`]: dense polynomials over exact rationals.
//! - [`quad`]: the quadratic extension holding the Binet roots.
//! - [`gfp`]: the family registry, recurrences and closed forms.
//! - [`identity`]: the identity DSL, its evaluator and the corpus verifier.
//! - [`cli`]: the `gfpkit` command-line front end.

pub mod cli;
pub mod gfp;
pub mod identity;
pub mod poly;
pub mod quad;

pub use gfp::{FamilyPair, FamilySpec, Kind, SequenceCache};
pub use poly::Poly;
pub use quad::QuadElem;
