//! Identity definitions, their exact evaluation and bounded verification.
//!
//! An identity is written in a small line-oriented language (`.gfpid`),
//! instantiated at every index tuple of a grid and evaluated on both sides in
//! the quadratic extension of one equivalent pair.

mod ast;
mod corpus;
mod eval;
mod index;
mod parser;
mod verify;

use thiserror::Error;

use crate::gfp::GfpError;
use crate::poly::PolyError;
use crate::quad::QuadError;

pub use ast::{CmpOp, Constraint, Expr, IdentityDef, Symbol, VarRange};
pub use corpus::{load_corpus, read_manifest, CorpusError, ManifestEntry};
pub use eval::{eval_expr, instantiate, with_alpha, Evaluator, Instance};
pub use index::{Assignment, IndexExpr, Var};
pub use parser::{parse_expr, parse_identity, ParseError};
pub use verify::{
    render_json, render_table, verify_corpus, verify_identity, verify_with, Counterexample, Status,
    Summary, VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstantiateError {
    #[error("constraint {constraint} does not hold")]
    ConstraintViolated { constraint: String },
    #[error("index {index} evaluates to {value}")]
    NegativeSubscript { index: String, value: i64 },
    #[error("variable `{0}` is unbound")]
    Unbound(Var),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("radicand {0} is not a perfect square")]
    NotASquare(String),
    #[error("radicand {0} has a nonzero radical part")]
    NonPolynomialRadicand(String),
    #[error("index {0} is not ground")]
    NotGround(String),
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Gfp(#[from] GfpError),
}
