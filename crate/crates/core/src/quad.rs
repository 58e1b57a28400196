//! The quadratic extension `Q(x)[s] / (s^2 - delta)`.
//!
//! Elements are `u + v*s` with polynomial parts. Every element carries the
//! `delta` it was built over; mixing elements of different extensions is an
//! error rather than a silent reinterpretation.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::poly::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("cannot combine elements over different radicands ({left} vs {right})")]
    DeltaMismatch { left: String, right: String },
}

#[derive(Clone, Debug)]
pub struct QuadElem {
    u: Poly,
    v: Poly,
    delta: Arc<Poly>,
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u && self.v == other.v && same_delta(&self.delta, &other.delta)
    }
}

impl Eq for QuadElem {}

fn same_delta(a: &Arc<Poly>, b: &Arc<Poly>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl QuadElem {
    pub fn new(u: Poly, v: Poly, delta: Arc<Poly>) -> Self {
        QuadElem { u, v, delta }
    }

    /// The embedded polynomial `p + 0*s`.
    pub fn from_poly(p: Poly, delta: Arc<Poly>) -> Self {
        QuadElem {
            u: p,
            v: Poly::zero(),
            delta,
        }
    }

    /// The radical `s` itself.
    pub fn radical(delta: Arc<Poly>) -> Self {
        QuadElem {
            u: Poly::zero(),
            v: Poly::one(),
            delta,
        }
    }

    pub fn one(delta: Arc<Poly>) -> Self {
        Self::from_poly(Poly::one(), delta)
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn delta(&self) -> &Arc<Poly> {
        &self.delta
    }

    /// `Some(u)` when the `s`-part vanishes.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.v.is_zero().then_some(&self.u)
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.u, self.v)
    }

    fn check(&self, other: &QuadElem) -> Result<(), QuadError> {
        if same_delta(&self.delta, &other.delta) {
            Ok(())
        } else {
            Err(QuadError::DeltaMismatch {
                left: self.delta.to_string(),
                right: other.delta.to_string(),
            })
        }
    }

    pub fn add(&self, other: &QuadElem) -> Result<QuadElem, QuadError> {
        self.check(other)?;
        Ok(QuadElem {
            u: &self.u + &other.u,
            v: &self.v + &other.v,
            delta: self.delta.clone(),
        })
    }

    pub fn sub(&self, other: &QuadElem) -> Result<QuadElem, QuadError> {
        self.check(other)?;
        Ok(QuadElem {
            u: &self.u - &other.u,
            v: &self.v - &other.v,
            delta: self.delta.clone(),
        })
    }

    /// `(u1 + v1 s)(u2 + v2 s) = (u1 u2 + v1 v2 delta) + (u1 v2 + u2 v1) s`.
    pub fn mul(&self, other: &QuadElem) -> Result<QuadElem, QuadError> {
        self.check(other)?;
        let mut u = &self.u * &other.u;
        if !self.v.is_zero() && !other.v.is_zero() {
            u = &u + &(&(&self.v * &other.v) * &self.delta);
        }
        let v = &(&self.u * &other.v) + &(&other.u * &self.v);
        Ok(QuadElem {
            u,
            v,
            delta: self.delta.clone(),
        })
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem {
            u: -&self.u,
            v: -&self.v,
            delta: self.delta.clone(),
        }
    }

    pub fn conj(&self) -> QuadElem {
        QuadElem {
            u: self.u.clone(),
            v: -&self.v,
            delta: self.delta.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QuadElem {
        QuadElem {
            u: self.u.scale(c),
            v: self.v.scale(c),
            delta: self.delta.clone(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> QuadElem {
        QuadElem {
            u: &self.u * p,
            v: &self.v * p,
            delta: self.delta.clone(),
        }
    }

    /// Divides both parts exactly by a polynomial.
    pub fn div_poly(&self, p: &Poly) -> Result<QuadElem, PolyError> {
        Ok(QuadElem {
            u: self.u.exact_div(p)?,
            v: self.v.exact_div(p)?,
            delta: self.delta.clone(),
        })
    }

    pub fn pow(&self, mut n: u64) -> QuadElem {
        let mut acc = QuadElem::one(self.delta.clone());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base).expect("same delta");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same delta");
            }
        }
        acc
    }

    /// The norm `u^2 - v^2 delta`, i.e. `e * conj(e)`.
    pub fn norm(&self) -> Poly {
        &(&self.u * &self.u) - &(&(&self.v * &self.v) * &self.delta)
    }
}

/// `u + (v)*s`, or just `u` when the radical part vanishes.
impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else if self.u.is_zero() {
            write!(f, "({})*s", self.v)
        } else {
            write!(f, "{} + ({})*s", self.u, self.v)
        }
    }
}
