use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use super::index::{Assignment, IndexExpr, Var};

/// Named quantities of an equivalent pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    D,
    G,
    /// `-g`
    NegG,
    Alpha,
    /// `(a - b)^2 = d^2 + 4g`
    Delta,
    /// The radical `a - b`.
    S,
}

impl Symbol {
    pub fn from_name(name: &str) -> Option<Symbol> {
        Some(match name {
            "d" => Symbol::D,
            "g" => Symbol::G,
            "neg_g" => Symbol::NegG,
            "alpha" => Symbol::Alpha,
            "Delta" => Symbol::Delta,
            "S" => Symbol::S,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::D => "d",
            Symbol::G => "g",
            Symbol::NegG => "neg_g",
            Symbol::Alpha => "alpha",
            Symbol::Delta => "Delta",
            Symbol::S => "S",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Nonnegative rational literal; negation is always an explicit `Neg`.
    Num(BigRational),
    /// Fibonacci-type term `G'_idx`.
    Gp(IndexExpr),
    /// Lucas-type term `G*_idx`.
    Gs(IndexExpr),
    Sym(Symbol),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, IndexExpr),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(BigRational::from_integer(n.into()))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Every index expression in the tree, subscripts and exponents alike.
    pub fn indices(&self) -> Vec<&IndexExpr> {
        let mut out = Vec::new();
        self.collect_indices(&mut out);
        out
    }

    fn collect_indices<'a>(&'a self, out: &mut Vec<&'a IndexExpr>) {
        match self {
            Expr::Num(_) | Expr::Sym(_) => {}
            Expr::Gp(i) | Expr::Gs(i) => out.push(i),
            Expr::Neg(e) | Expr::Sqrt(e) => e.collect_indices(out),
            Expr::Pow(e, i) => {
                e.collect_indices(out);
                out.push(i);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_indices(out);
                b.collect_indices(out);
            }
        }
    }

    /// Rewrites every index with `f`, stopping at the first error.
    pub fn try_map_indices<E>(
        &self,
        f: &mut impl FnMut(&IndexExpr) -> Result<IndexExpr, E>,
    ) -> Result<Expr, E> {
        Ok(match self {
            Expr::Num(_) | Expr::Sym(_) => self.clone(),
            Expr::Gp(i) => Expr::Gp(f(i)?),
            Expr::Gs(i) => Expr::Gs(f(i)?),
            Expr::Neg(e) => Expr::Neg(Box::new(e.try_map_indices(f)?)),
            Expr::Sqrt(e) => Expr::Sqrt(Box::new(e.try_map_indices(f)?)),
            Expr::Pow(e, i) => Expr::Pow(Box::new(e.try_map_indices(f)?), f(i)?),
            Expr::Add(a, b) => Expr::Add(
                Box::new(a.try_map_indices(f)?),
                Box::new(b.try_map_indices(f)?),
            ),
            Expr::Sub(a, b) => Expr::Sub(
                Box::new(a.try_map_indices(f)?),
                Box::new(b.try_map_indices(f)?),
            ),
            Expr::Mul(a, b) => Expr::Mul(
                Box::new(a.try_map_indices(f)?),
                Box::new(b.try_map_indices(f)?),
            ),
            Expr::Div(a, b) => Expr::Div(
                Box::new(a.try_map_indices(f)?),
                Box::new(b.try_map_indices(f)?),
            ),
        })
    }

    pub fn is_ground(&self) -> bool {
        self.indices().iter().all(|i| i.as_constant().is_some())
    }

    pub fn contains_sqrt(&self) -> bool {
        match self {
            Expr::Sqrt(_) => true,
            Expr::Num(_) | Expr::Sym(_) | Expr::Gp(_) | Expr::Gs(_) => false,
            Expr::Neg(e) | Expr::Pow(e, _) => e.contains_sqrt(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_sqrt() || b.contains_sqrt()
            }
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, child: &Expr, strict: bool) -> fmt::Result {
        let (p, c) = (self.precedence(), child.precedence());
        if c < p || (strict && c == p) {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

fn fmt_exponent(f: &mut fmt::Formatter<'_>, e: &IndexExpr) -> fmt::Result {
    match e.as_constant() {
        Some(c) if c >= 0 => write!(f, "{c}"),
        _ => {
            let vars: Vec<Var> = e.vars().collect();
            if vars.len() == 1 && *e == IndexExpr::var(vars[0]) {
                write!(f, "{}", vars[0])
            } else {
                write!(f, "({e})")
            }
        }
    }
}

/// Renders the DSL syntax with the fewest parentheses that reparse to the
/// same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => {
                if q.is_negative() {
                    write!(f, "(-{})", q.abs())
                } else {
                    write!(f, "{q}")
                }
            }
            Expr::Gp(i) => write!(f, "Gp[{i}]"),
            Expr::Gs(i) => write!(f, "Gs[{i}]"),
            Expr::Sym(s) => f.write_str(s.name()),
            Expr::Neg(e) => {
                f.write_str("-")?;
                self.fmt_child(f, e, false)
            }
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Pow(base, e) => {
                let atomic_num =
                    matches!(&**base, Expr::Num(q) if q.is_integer() && !q.is_negative());
                if base.precedence() < 5 || (matches!(&**base, Expr::Num(_)) && !atomic_num) {
                    write!(f, "({base})")?;
                } else {
                    write!(f, "{base}")?;
                }
                f.write_str("^")?;
                fmt_exponent(f, e)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                self.fmt_child(f, a, false)?;
                f.write_str(if matches!(self, Expr::Add(..)) {
                    " + "
                } else {
                    " - "
                })?;
                self.fmt_child(f, b, true)
            }
            Expr::Mul(a, b) => {
                self.fmt_child(f, a, false)?;
                f.write_str("*")?;
                self.fmt_child(f, b, true)
            }
            Expr::Div(a, b) => {
                self.fmt_child(f, a, false)?;
                f.write_str(" / ")?;
                self.fmt_child(f, b, true)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
            CmpOp::Le => "<=",
            CmpOp::Lt => "<",
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub lhs: IndexExpr,
    pub op: CmpOp,
    pub rhs: IndexExpr,
}

impl Constraint {
    pub fn holds(&self, a: &Assignment) -> Result<bool, Var> {
        let (l, r) = (self.lhs.eval(a)?, self.rhs.eval(a)?);
        Ok(match self.op {
            CmpOp::Ge => l >= r,
            CmpOp::Gt => l > r,
            CmpOp::Le => l <= r,
            CmpOp::Lt => l < r,
            CmpOp::Eq => l == r,
            CmpOp::Ne => l != r,
        })
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.lhs, self.op.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarRange {
    pub var: Var,
    pub lo: i64,
    pub hi: i64,
}

/// One identity `lhs = rhs` (optionally `lhs = mid = rhs`) over free index
/// variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityDef {
    pub id: String,
    pub vars: Vec<Var>,
    pub constraints: Vec<Constraint>,
    pub ranges: Vec<VarRange>,
    /// Pairs on which the identity is recorded as failing; informational only,
    /// it never changes a verification outcome.
    pub known_failures: Vec<String>,
    pub lhs: Expr,
    pub mid: Option<Expr>,
    pub rhs: Expr,
}

impl IdentityDef {
    pub fn range_of(&self, v: Var) -> Option<(i64, i64)> {
        self.ranges
            .iter()
            .find(|r| r.var == v)
            .map(|r| (r.lo, r.hi))
    }

    pub fn sides(&self) -> impl Iterator<Item = &Expr> {
        std::iter::once(&self.lhs)
            .chain(self.mid.as_ref())
            .chain(std::iter::once(&self.rhs))
    }

    pub fn has_alpha_guard(&self) -> bool {
        self.constraints
            .iter()
            .any(|c| c.lhs.mentions(Var::Alpha) || c.rhs.mentions(Var::Alpha))
    }
}

/// Serializes back to the line-oriented `.gfpid` format.
impl fmt::Display for IdentityDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity {}", self.id)?;
        if !self.vars.is_empty() {
            let names: Vec<&str> = self.vars.iter().map(|v| v.name()).collect();
            writeln!(f, "vars {}", names.join(" "))?;
        }
        if !self.constraints.is_empty() {
            let cs: Vec<String> = self.constraints.iter().map(ToString::to_string).collect();
            writeln!(f, "constraints {}", cs.join(" ; "))?;
        }
        for r in &self.ranges {
            writeln!(f, "range {} {}..{}", r.var, r.lo, r.hi)?;
        }
        if !self.known_failures.is_empty() {
            writeln!(f, "known-fail {}", self.known_failures.join(" "))?;
        }
        writeln!(f, "lhs {}", self.lhs)?;
        if let Some(mid) = &self.mid {
            writeln!(f, "mid {mid}")?;
        }
        writeln!(f, "rhs {}", self.rhs)
    }
}
