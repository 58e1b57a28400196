//! Parser for the line-oriented `.gfpid` identity format.
//!
//! ```text
//! identity I6
//! vars n
//! constraints n>=1
//! lhs alpha*Gs[n]*Gp[n]
//! rhs Gp[2n]
//! ```
//!
//! `#` starts a comment; `|` may stand in for a line break.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::ast::{CmpOp, Constraint, Expr, IdentityDef, Symbol, VarRange};
use super::index::{IndexExpr, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown symbol `{name}`")]
    UnknownSymbol {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}, column {column}: variable `{name}` is not declared in `vars`")]
    UnboundVariable {
        line: usize,
        column: usize,
        name: String,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownSymbol { line, column, .. }
            | ParseError::UnboundVariable { line, column, .. } => (*line, *column),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Rat(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Cmp(CmpOp),
    Semi,
    DotDot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Rat(q) => write!(f, "{q}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::Caret => f.write_str("^"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::LBrack => f.write_str("["),
            Tok::RBrack => f.write_str("]"),
            Tok::Cmp(op) => f.write_str(op.symbol()),
            Tok::Semi => f.write_str(";"),
            Tok::DotDot => f.write_str(".."),
            Tok::Eof => f.write_str("end of line"),
        }
    }
}

/// Tokenizes `src`, reporting columns as `offset + byte index + 1`.
fn lex(src: &str, line: usize, offset: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_end = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let col = offset + i + 1;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let end = digits_end(i);
            let num: BigInt = src[i..end].parse().expect("digits");
            // `p/q` with no surrounding space is a single rational literal
            if end + 1 < bytes.len() && bytes[end] == b'/' && bytes[end + 1].is_ascii_digit() {
                let dend = digits_end(end + 1);
                let den: BigInt = src[end + 1..dend].parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError::Syntax {
                        line,
                        column: col,
                        message: "zero denominator".into(),
                    });
                }
                out.push((Tok::Rat(BigRational::new(num, den)), col));
                i = dend;
            } else {
                out.push((Tok::Int(num), col));
                i = end;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let mut end = i;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            out.push((Tok::Ident(src[i..end].to_owned()), col));
            i = end;
            continue;
        }
        let two = bytes.get(i + 1).copied();
        let (tok, len) = match (c, two) {
            (b'>', Some(b'=')) => (Tok::Cmp(CmpOp::Ge), 2),
            (b'<', Some(b'=')) => (Tok::Cmp(CmpOp::Le), 2),
            (b'!', Some(b'=')) => (Tok::Cmp(CmpOp::Ne), 2),
            (b'.', Some(b'.')) => (Tok::DotDot, 2),
            (b'>', _) => (Tok::Cmp(CmpOp::Gt), 1),
            (b'<', _) => (Tok::Cmp(CmpOp::Lt), 1),
            (b'=', _) => (Tok::Cmp(CmpOp::Eq), 1),
            (b'+', _) => (Tok::Plus, 1),
            (b'-', _) => (Tok::Minus, 1),
            (b'*', _) => (Tok::Star, 1),
            (b'/', _) => (Tok::Slash, 1),
            (b'^', _) => (Tok::Caret, 1),
            (b'(', _) => (Tok::LParen, 1),
            (b')', _) => (Tok::RParen, 1),
            (b'[', _) => (Tok::LBrack, 1),
            (b']', _) => (Tok::RBrack, 1),
            (b';', _) => (Tok::Semi, 1),
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(ParseError::Syntax {
                    line,
                    column: col,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((tok, col));
        i += len;
    }
    out.push((Tok::Eof, offset + bytes.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    vars: &'a [Var],
    /// Constraints may mention `alpha`; expressions use the symbol instead.
    allow_alpha_var: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &str, line: usize, offset: usize, vars: &'a [Var]) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src, line, offset)?,
            pos: 0,
            line,
            vars,
            allow_alpha_var: false,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        self.syntax(
            self.column(),
            format!("expected {wanted}, found {}", self.peek()),
        )
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => self.unexpected("end of line"),
        }
    }

    fn small_int(&self, n: &BigInt, column: usize) -> Result<i64, ParseError> {
        match n.to_i64() {
            Some(v) => Ok(v),
            None => self.syntax(column, "integer out of range"),
        }
    }

    fn index_var(&self, name: &str, column: usize) -> Result<Var, ParseError> {
        match Var::from_name(name) {
            Some(Var::Alpha) if self.allow_alpha_var => Ok(Var::Alpha),
            Some(v) if v != Var::Alpha && self.vars.contains(&v) => Ok(v),
            Some(v) if v != Var::Alpha => Err(ParseError::UnboundVariable {
                line: self.line,
                column,
                name: name.to_owned(),
            }),
            _ => Err(ParseError::UnknownSymbol {
                line: self.line,
                column,
                name: name.to_owned(),
            }),
        }
    }

    // index := iterm (('+' | '-') iterm)*
    fn index(&mut self) -> Result<IndexExpr, ParseError> {
        let mut acc = self.index_term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.index_term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.index_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // iterm := ifactor (('*')? ifactor)*, juxtaposition as in `2n` or `j(k+u)`
    fn index_term(&mut self) -> Result<IndexExpr, ParseError> {
        let mut acc = self.index_factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.index_factor()?);
                }
                Tok::Ident(_) | Tok::LParen => acc = acc.mul(&self.index_factor()?),
                _ => return Ok(acc),
            }
        }
    }

    fn index_factor(&mut self) -> Result<IndexExpr, ParseError> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Minus => Ok(self.index_factor()?.neg()),
            Tok::Int(n) => Ok(IndexExpr::constant(self.small_int(&n, col)?)),
            Tok::Ident(name) => Ok(IndexExpr::var(self.index_var(&name, col)?)),
            Tok::LParen => {
                let e = self.index()?;
                self.close(Tok::RParen, col, "(")?;
                Ok(e)
            }
            other => self.syntax(col, format!("expected an index term, found {other}")),
        }
    }

    fn close(&mut self, want: Tok, open_col: usize, open: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else if *self.peek() == Tok::Eof {
            self.syntax(open_col, format!("unclosed '{open}'"))
        } else {
            self.unexpected(&format!("'{want}'"))
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, col) = self.bump();
        let exp = match tok {
            Tok::Int(n) => IndexExpr::constant(self.small_int(&n, col)?),
            Tok::Ident(name) => IndexExpr::var(self.index_var(&name, col)?),
            Tok::LParen => {
                let e = self.index()?;
                self.close(Tok::RParen, col, "(")?;
                e
            }
            other => return self.syntax(col, format!("expected an exponent, found {other}")),
        };
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Expr::Num(BigRational::from_integer(n))),
            Tok::Rat(q) => Ok(Expr::Num(q)),
            Tok::LParen => {
                let e = self.expr()?;
                self.close(Tok::RParen, col, "(")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "Gp" | "Gs" => {
                    let open = self.column();
                    if *self.peek() != Tok::LBrack {
                        return self.unexpected("'['");
                    }
                    self.bump();
                    let idx = self.index()?;
                    self.close(Tok::RBrack, open, "[")?;
                    Ok(if name == "Gp" {
                        Expr::Gp(idx)
                    } else {
                        Expr::Gs(idx)
                    })
                }
                "sqrt" => {
                    let open = self.column();
                    if *self.peek() != Tok::LParen {
                        return self.unexpected("'('");
                    }
                    self.bump();
                    let e = self.expr()?;
                    self.close(Tok::RParen, open, "(")?;
                    Ok(Expr::Sqrt(Box::new(e)))
                }
                _ => match Symbol::from_name(&name) {
                    Some(s) => Ok(Expr::Sym(s)),
                    None => Err(ParseError::UnknownSymbol {
                        line: self.line,
                        column: col,
                        name,
                    }),
                },
            },
            other => self.syntax(col, format!("expected an expression, found {other}")),
        }
    }

    fn constraints(&mut self) -> Result<Vec<Constraint>, ParseError> {
        self.allow_alpha_var = true;
        let mut out = Vec::new();
        loop {
            let lhs = self.index()?;
            let op = match self.bump() {
                (Tok::Cmp(op), _) => op,
                (other, col) => {
                    return self.syntax(col, format!("expected a comparison, found {other}"))
                }
            };
            let rhs = self.index()?;
            out.push(Constraint { lhs, op, rhs });
            match self.peek() {
                Tok::Semi => {
                    self.bump();
                }
                Tok::Eof => return Ok(out),
                _ => return self.unexpected("';' or end of line"),
            }
        }
    }

    fn range(&mut self) -> Result<VarRange, ParseError> {
        let var = match self.bump() {
            (Tok::Ident(name), col) => self.index_var(&name, col)?,
            (other, col) => return self.syntax(col, format!("expected a variable, found {other}")),
        };
        let lo = self.signed_int()?;
        if *self.peek() != Tok::DotDot {
            return self.unexpected("'..'");
        }
        self.bump();
        let hi = self.signed_int()?;
        if lo > hi {
            return self.syntax(self.column(), format!("empty range {lo}..{hi}"));
        }
        Ok(VarRange { var, lo, hi })
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        match self.bump() {
            (Tok::Int(n), col) => Ok(if neg {
                -self.small_int(&n, col)?
            } else {
                self.small_int(&n, col)?
            }),
            (other, col) => self.syntax(col, format!("expected an integer, found {other}")),
        }
    }
}

fn is_id(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-' | '/'))
}

/// Parses a single identity definition.
pub fn parse_identity(text: &str) -> Result<IdentityDef, ParseError> {
    let mut id: Option<String> = None;
    let mut vars: Option<Vec<Var>> = None;
    let mut constraints: Option<Vec<Constraint>> = None;
    let mut ranges: Vec<VarRange> = Vec::new();
    let mut known_failures: Option<Vec<String>> = None;
    let mut lhs: Option<Expr> = None;
    let mut mid: Option<Expr> = None;
    let mut rhs: Option<Expr> = None;
    let mut last_line = 0;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        last_line = line;
        let code = raw.split('#').next().unwrap_or("");
        let mut seg_start = 0;
        for segment in code.split('|') {
            let offset = seg_start;
            seg_start += segment.len() + 1;
            let trimmed = segment.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let lead = offset + segment.len() - trimmed.len();
            let kw_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            let keyword = &trimmed[..kw_len];
            let rest = &trimmed[kw_len..];
            let rest_offset = lead + kw_len;
            let kw_col = lead + 1;
            let dup = |set: bool| -> Result<(), ParseError> {
                if set {
                    Err(ParseError::Syntax {
                        line,
                        column: kw_col,
                        message: format!("duplicate `{keyword}`"),
                    })
                } else {
                    Ok(())
                }
            };
            let declared = vars.clone().unwrap_or_default();
            match keyword {
                "identity" => {
                    dup(id.is_some())?;
                    let name = rest.trim();
                    if !is_id(name) || name.contains(char::is_whitespace) {
                        return Err(ParseError::Syntax {
                            line,
                            column: kw_col,
                            message: format!("invalid identity id `{name}`"),
                        });
                    }
                    id = Some(name.to_owned());
                }
                "vars" => {
                    dup(vars.is_some())?;
                    let mut list = Vec::new();
                    let mut p = Parser::new(rest, line, rest_offset, &[])?;
                    while *p.peek() != Tok::Eof {
                        match p.bump() {
                            (Tok::Ident(name), col) => match Var::from_name(&name) {
                                Some(v) if v != Var::Alpha && !list.contains(&v) => list.push(v),
                                Some(v) if v != Var::Alpha => {
                                    return p
                                        .syntax(col, format!("variable `{name}` declared twice"))
                                }
                                _ => {
                                    return Err(ParseError::UnknownSymbol {
                                        line,
                                        column: col,
                                        name,
                                    })
                                }
                            },
                            (other, col) => {
                                return p.syntax(col, format!("expected a variable, found {other}"))
                            }
                        }
                    }
                    vars = Some(list);
                }
                "constraints" => {
                    dup(constraints.is_some())?;
                    let mut p = Parser::new(rest, line, rest_offset, &declared)?;
                    constraints = Some(p.constraints()?);
                }
                "range" => {
                    let mut p = Parser::new(rest, line, rest_offset, &declared)?;
                    let r = p.range()?;
                    p.expect_end()?;
                    if ranges.iter().any(|x| x.var == r.var) {
                        return Err(ParseError::Syntax {
                            line,
                            column: kw_col,
                            message: format!("duplicate range for `{}`", r.var),
                        });
                    }
                    ranges.push(r);
                }
                "known-fail" => {
                    dup(known_failures.is_some())?;
                    let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
                    if let Some(bad) = names.iter().find(|n| !is_id(n)) {
                        return Err(ParseError::Syntax {
                            line,
                            column: kw_col,
                            message: format!("invalid pair name `{bad}`"),
                        });
                    }
                    known_failures = Some(names);
                }
                "lhs" | "mid" | "rhs" => {
                    let slot = match keyword {
                        "lhs" => &mut lhs,
                        "mid" => &mut mid,
                        _ => &mut rhs,
                    };
                    dup(slot.is_some())?;
                    let mut p = Parser::new(rest, line, rest_offset, &declared)?;
                    if *p.peek() == Tok::Eof {
                        return p.unexpected("an expression");
                    }
                    let e = p.expr()?;
                    p.expect_end()?;
                    *slot = Some(e);
                }
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        column: kw_col,
                        message: format!("unknown directive `{other}`"),
                    })
                }
            }
        }
    }

    let missing = |what: &str| ParseError::Syntax {
        line: last_line + 1,
        column: 1,
        message: format!("missing `{what}`"),
    };
    Ok(IdentityDef {
        id: id.ok_or_else(|| missing("identity"))?,
        vars: vars.unwrap_or_default(),
        constraints: constraints.unwrap_or_default(),
        ranges,
        known_failures: known_failures.unwrap_or_default(),
        lhs: lhs.ok_or_else(|| missing("lhs"))?,
        mid,
        rhs: rhs.ok_or_else(|| missing("rhs"))?,
    })
}

/// Parses an expression with the given variables in scope.
pub fn parse_expr(text: &str, vars: &[Var]) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text, 1, 0, vars)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> IndexExpr {
        IndexExpr::var(Var::N)
    }

    #[test]
    fn parses_single_line_form() {
        let def = parse_identity(
            "identity I6 | vars n | constraints n>=1 | lhs alpha*Gs[n]*Gp[n] | rhs Gp[2n]",
        )
        .unwrap();
        assert_eq!(def.id, "I6");
        assert_eq!(def.vars, vec![Var::N]);
        assert_eq!(
            def.constraints,
            vec![Constraint {
                lhs: n(),
                op: CmpOp::Ge,
                rhs: IndexExpr::constant(1)
            }]
        );
        let want_lhs = Expr::Mul(
            Box::new(Expr::Mul(
                Box::new(Expr::Sym(Symbol::Alpha)),
                Box::new(Expr::Gs(n())),
            )),
            Box::new(Expr::Gp(n())),
        );
        assert_eq!(def.lhs, want_lhs);
        assert_eq!(def.rhs, Expr::Gp(n().mul(&IndexExpr::constant(2))));
    }

    #[test]
    fn unclosed_bracket_points_at_bracket() {
        let err = parse_identity("identity X\nvars n\nlhs Gp[n\nrhs 0").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 3,
                column: 7,
                message: "unclosed '['".into()
            }
        );
    }

    #[test]
    fn unknown_and_unbound_names() {
        let err = parse_identity("identity X\nvars n\nlhs Gq[n]\nrhs 0").unwrap_err();
        assert!(
            matches!(err, ParseError::UnknownSymbol { line: 3, column: 5, ref name } if name == "Gq")
        );
        let err = parse_identity("identity X\nvars n\nlhs Gp[m]\nrhs 0").unwrap_err();
        assert!(
            matches!(err, ParseError::UnboundVariable { line: 3, column: 8, ref name } if name == "m")
        );
        let err = parse_identity("identity X\nvars n\nlhs g^m\nrhs 0").unwrap_err();
        assert!(matches!(err, ParseError::UnboundVariable { .. }));
        let err = parse_identity("identity X\nvars n q\nlhs 1\nrhs 1").unwrap_err();
        assert!(matches!(err, ParseError::UnknownSymbol { ref name, .. } if name == "q"));
    }

    #[test]
    fn missing_and_duplicate_directives() {
        assert!(
            matches!(parse_identity("identity X\nlhs 1"), Err(ParseError::Syntax { ref message, .. }) if message == "missing `rhs`")
        );
        assert!(matches!(
            parse_identity("identity X\nlhs 1\nlhs 2\nrhs 1"),
            Err(ParseError::Syntax { line: 3, ref message, .. }) if message.contains("duplicate")
        ));
        assert!(matches!(
            parse_identity("identity X\nlemma 1"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn rational_literal_versus_division() {
        let e = parse_expr("1/2", &[]).unwrap();
        assert_eq!(e, Expr::Num(BigRational::new(1.into(), 2.into())));
        let e = parse_expr("1 / 2", &[]).unwrap();
        assert_eq!(e, Expr::Div(Box::new(Expr::int(1)), Box::new(Expr::int(2))));
    }

    #[test]
    fn products_in_subscripts() {
        let vars = [Var::J, Var::K, Var::U, Var::R, Var::V];
        let e = parse_expr("Gs[j*(k+u)+r+v]", &vars).unwrap();
        let Expr::Gs(idx) = e else { panic!() };
        assert_eq!(idx.to_string(), "j*k+j*u+r+v");
        let e = parse_expr("Gs[j(k-u)+r-v]", &vars).unwrap();
        let Expr::Gs(idx) = e else { panic!() };
        assert_eq!(idx.to_string(), "j*k-j*u+r-v");
    }

    #[test]
    fn precedence() {
        let e = parse_expr("-g^2*d + 1", &[]).unwrap();
        assert_eq!(e.to_string(), "-g^2*d + 1");
        let Expr::Add(l, _) = &e else { panic!() };
        assert!(matches!(&**l, Expr::Mul(a, _) if matches!(&**a, Expr::Neg(_))));
        assert_eq!(
            parse_expr("(d - g) - (d - g)", &[]).unwrap().to_string(),
            "d - g - (d - g)"
        );
        assert_eq!(parse_expr("((d))", &[]).unwrap().to_string(), "d");
    }

    #[test]
    fn constraints_and_ranges() {
        let def = parse_identity(
            "identity X\nvars m n s t\nconstraints m+n=s+t ; n!=m ; alpha=1\nrange m 1..4\nrange t 0..2\nlhs 1\nrhs 1",
        )
        .unwrap();
        assert_eq!(def.constraints.len(), 3);
        assert_eq!(def.constraints[1].op, CmpOp::Ne);
        assert!(def.has_alpha_guard());
        assert_eq!(def.range_of(Var::M), Some((1, 4)));
        assert!(parse_identity("identity X\nvars n\nrange n 3..1\nlhs 1\nrhs 1").is_err());
        assert!(matches!(
            parse_identity("identity X\nvars n\nconstraints n>=m\nlhs 1\nrhs 1"),
            Err(ParseError::UnboundVariable { .. })
        ));
    }

    #[test]
    fn comments_are_ignored() {
        let def = parse_identity("# header\nidentity X # trailing\nlhs d # c\nrhs d\n").unwrap();
        assert_eq!(def.lhs, Expr::Sym(Symbol::D));
    }

    #[test]
    fn known_failures_are_kept() {
        let def = parse_identity("identity X\nknown-fail pell/pell-lucas-prime chebyshev-second/chebyshev-first\nlhs 1\nrhs 1").unwrap();
        assert_eq!(def.known_failures.len(), 2);
        let again = parse_identity(&def.to_string()).unwrap();
        assert_eq!(again, def);
    }
}
