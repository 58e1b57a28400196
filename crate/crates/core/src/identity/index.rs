//! Integer index expressions used as subscripts and exponents.
//!
//! Most subscripts are linear (`2n+1`, `n-m`), but a few identities index by
//! products such as `j(k+u)+r+v`, so an index is stored as an integer
//! polynomial over the index variables.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    N,
    M,
    R,
    S,
    T,
    I,
    J,
    K,
    U,
    V,
    /// The pair's normalization constant; bound per pair, never enumerated.
    Alpha,
}

impl Var {
    pub const FREE: [Var; 10] = [
        Var::N,
        Var::M,
        Var::R,
        Var::S,
        Var::T,
        Var::I,
        Var::J,
        Var::K,
        Var::U,
        Var::V,
    ];

    pub fn from_name(name: &str) -> Option<Var> {
        Some(match name {
            "n" => Var::N,
            "m" => Var::M,
            "r" => Var::R,
            "s" => Var::S,
            "t" => Var::T,
            "i" => Var::I,
            "j" => Var::J,
            "k" => Var::K,
            "u" => Var::U,
            "v" => Var::V,
            "alpha" => Var::Alpha,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::M => "m",
            Var::R => "r",
            Var::S => "s",
            Var::T => "t",
            Var::I => "i",
            Var::J => "j",
            Var::K => "k",
            Var::U => "u",
            Var::V => "v",
            Var::Alpha => "alpha",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Values for index variables; unset variables are unbound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: [Option<i64>; 11],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: Var, value: i64) -> Self {
        self.set(var, value);
        self
    }

    pub fn set(&mut self, var: Var, value: i64) {
        self.values[var.slot()] = Some(value);
    }

    pub fn get(&self, var: Var) -> Option<i64> {
        self.values[var.slot()]
    }

    /// Bound free variables in declaration order (alpha excluded).
    pub fn bound(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        Var::FREE
            .iter()
            .filter_map(|&v| self.get(v).map(|x| (v, x)))
    }
}

/// `sum of coeff * product(vars)`, with zero coefficients dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IndexExpr {
    terms: BTreeMap<Vec<Var>, i64>,
}

impl IndexExpr {
    pub fn constant(c: i64) -> Self {
        let mut e = IndexExpr::default();
        e.add_term(Vec::new(), c);
        e
    }

    pub fn var(v: Var) -> Self {
        let mut e = IndexExpr::default();
        e.add_term(vec![v], 1);
        e
    }

    fn add_term(&mut self, mono: Vec<Var>, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(mono).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add(&self, other: &IndexExpr) -> IndexExpr {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> IndexExpr {
        IndexExpr {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &IndexExpr) -> IndexExpr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IndexExpr) -> IndexExpr {
        let mut out = IndexExpr::default();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let mut mono: Vec<Var> = m1.iter().chain(m2).copied().collect();
                mono.sort();
                out.add_term(mono, c1 * c2);
            }
        }
        out
    }

    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Vec::new()).copied(),
            _ => None,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        let mut seen: Vec<Var> = self.terms.keys().flatten().copied().collect();
        seen.sort();
        seen.dedup();
        seen.into_iter()
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.contains(&v))
    }

    pub fn eval(&self, assignment: &Assignment) -> Result<i64, Var> {
        let mut total = 0i64;
        for (mono, &c) in &self.terms {
            let mut term = c;
            for &v in mono {
                term *= assignment.get(v).ok_or(v)?;
            }
            total += term;
        }
        Ok(total)
    }

    /// Replaces `v` by `e`.
    pub fn substitute(&self, v: Var, e: &IndexExpr) -> IndexExpr {
        let mut out = IndexExpr::default();
        for (mono, &c) in &self.terms {
            let mut term = IndexExpr::constant(c);
            for &w in mono {
                term = if w == v {
                    term.mul(e)
                } else {
                    term.mul(&IndexExpr::var(w))
                };
            }
            out = out.add(&term);
        }
        out
    }

    /// Solves `self = 0` for `v` when `v` occurs only linearly with a unit
    /// coefficient.
    pub fn solve_for(&self, v: Var) -> Option<IndexExpr> {
        let coeff = *self.terms.get(&vec![v])?;
        if coeff.abs() != 1 {
            return None;
        }
        let rest = self.sub(&IndexExpr::var(v).mul(&IndexExpr::constant(coeff)));
        if rest.mentions(v) {
            return None;
        }
        // coeff * v + rest = 0
        Some(if coeff == 1 { rest.neg() } else { rest })
    }
}

/// Prints `2n+1`, `n-m`, `j*k+j*u+r+v`: higher degree first, no spaces.
impl fmt::Display for IndexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&Vec<Var>, &i64)> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| std::cmp::Reverse(m.len()));
        for (i, (mono, &c)) in ordered.into_iter().enumerate() {
            if c < 0 {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let abs = c.unsigned_abs();
            let names: Vec<&str> = mono.iter().map(|v| v.name()).collect();
            match (names.len(), abs) {
                (0, _) => write!(f, "{abs}")?,
                (1, 1) => write!(f, "{}", names[0])?,
                (1, _) => write!(f, "{abs}{}", names[0])?,
                (_, 1) => write!(f, "{}", names.join("*"))?,
                (_, _) => write!(f, "{abs}*{}", names.join("*"))?,
            }
        }
        Ok(())
    }
}
