//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending order: `coeffs[i]` is the coefficient
//! of `x^i`. The zero polynomial is the empty vector, and every constructor and
//! operation strips trailing zeros so that two equal polynomials always have
//! identical storage.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("polynomial is not a perfect square")]
    NotASquare,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("cannot parse polynomial at column {column}: {message}")]
    Parse { column: usize, message: String },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.canonicalize();
        p
    }

    /// Builds a polynomial from integer coefficients in ascending order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_ints(&[c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    fn canonicalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// The constant value if the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn all_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder of Euclidean division by `divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = divisor.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Returns `q` with `q * divisor == self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        if divisor.is_one() {
            return Ok(self.clone());
        }
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x0: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x0 + c)
    }

    /// Exact square root with positive leading coefficient.
    ///
    /// The root is recovered coefficient by coefficient from the top down and
    /// then squared back, so any non-square input is rejected.
    pub fn sqrt(&self) -> Result<Poly, PolyError> {
        let Some(deg) = self.degree() else {
            return Ok(Poly::zero());
        };
        if deg % 2 != 0 {
            return Err(PolyError::NotASquare);
        }
        let half = deg / 2;
        let lead = rational_sqrt(&self.coeffs[deg]).ok_or(PolyError::NotASquare)?;
        let two_lead = &lead + &lead;
        let mut root = vec![BigRational::zero(); half + 1];
        root[half] = lead;
        for i in 1..=half {
            // coefficient of x^(deg - i) in root^2 counts 2*r[half]*r[half-i]
            // plus cross terms among already-known coefficients
            let mut acc = self.coeffs[deg - i].clone();
            for j in 1..i {
                acc -= &root[half - j] * &root[half - i + j];
            }
            root[half - i] = acc / &two_lead;
        }
        let root = Poly::new(root);
        if &(&root * &root) == self {
            Ok(root)
        } else {
            Err(PolyError::NotASquare)
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o += c;
        }
        Poly::new(out)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = self.coeffs.clone();
        out.resize(len, BigRational::zero());
        for (o, c) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= c;
        }
        Poly::new(out)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        // Sequence values are integral almost everywhere; convolving numerators
        // directly skips a gcd normalization per partial product.
        if self.all_integer() && rhs.all_integer() {
            let mut out = vec![BigInt::zero(); len];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    out[i + j] += a.numer() * b.numer();
                }
            }
            return Poly::new(out.into_iter().map(BigRational::from_integer).collect());
        }
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

/// Renders in descending powers with explicit signs, e.g. `x^2 - 4` or
/// `1/2*x^3 + x`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    /// Accepts the rendered format plus a few relaxations: optional `*`
    /// between coefficient and `x` (`2x`), arbitrary whitespace, and repeated
    /// powers (`x^2 + x^2`), which are summed.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyParser {
            src: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as BigInt"))
    }

    fn parse(mut self) -> Result<Poly, PolyError> {
        let mut acc: Vec<BigRational> = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            };
            first = false;
            let (mut coeff, k) = self.term()?;
            if negative {
                coeff = -coeff;
            }
            if acc.len() <= k {
                acc.resize(k + 1, BigRational::zero());
            }
            acc[k] += coeff;
        }
        Ok(Poly::new(acc))
    }

    fn term(&mut self) -> Result<(BigRational, usize), PolyError> {
        let mut coeff = BigRational::one();
        let mut has_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.integer()?;
            let mut value = BigRational::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let den = self.integer()?;
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                value /= BigRational::from_integer(den);
            }
            coeff = value;
            has_coeff = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                if self.peek() != Some(b'x') {
                    return self.err("expected 'x' after '*'");
                }
            }
        }
        if self.peek() == Some(b'x') {
            self.pos += 1;
            let mut k = 1usize;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let e = self.integer()?;
                k = match usize::try_from(&e) {
                    Ok(k) => k,
                    Err(_) => return self.err("exponent out of range"),
                };
            }
            Ok((coeff, k))
        } else if has_coeff {
            Ok((coeff, 0))
        } else {
            self.err("expected a coefficient or 'x'")
        }
    }
}
