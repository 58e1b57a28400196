use crate::gfp::{FamilyPair, SequenceCache};
use crate::poly::{Poly, PolyError};
use crate::quad::QuadElem;

use super::ast::{Expr, IdentityDef, Symbol};
use super::index::{Assignment, IndexExpr, Var};
use super::{EvalError, InstantiateError};

/// Ground sides of an identity at one index tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub lhs: Expr,
    pub mid: Option<Expr>,
    pub rhs: Expr,
}

impl Instance {
    pub fn sides(&self) -> impl Iterator<Item = &Expr> {
        std::iter::once(&self.lhs)
            .chain(self.mid.as_ref())
            .chain(std::iter::once(&self.rhs))
    }
}

/// Resolves every index of `def` under `assignment`.
///
/// Constraints that mention `alpha` need it bound in the assignment.
pub fn instantiate(
    def: &IdentityDef,
    assignment: &Assignment,
) -> Result<Instance, InstantiateError> {
    for &v in &def.vars {
        if assignment.get(v).is_none() {
            return Err(InstantiateError::Unbound(v));
        }
    }
    for c in &def.constraints {
        if !c.holds(assignment).map_err(InstantiateError::Unbound)? {
            return Err(InstantiateError::ConstraintViolated {
                constraint: c.to_string(),
            });
        }
    }
    let ground = |e: &Expr| {
        e.try_map_indices(&mut |idx: &IndexExpr| {
            let value = idx.eval(assignment).map_err(InstantiateError::Unbound)?;
            if value < 0 {
                return Err(InstantiateError::NegativeSubscript {
                    index: idx.to_string(),
                    value,
                });
            }
            Ok(IndexExpr::constant(value))
        })
    };
    Ok(Instance {
        lhs: ground(&def.lhs)?,
        mid: def.mid.as_ref().map(ground).transpose()?,
        rhs: ground(&def.rhs)?,
    })
}

/// Evaluates ground expressions over one equivalent pair.
///
/// Holds the pair's sequence caches, so repeated evaluation reuses terms.
#[derive(Debug, Clone)]
pub struct Evaluator<'p> {
    pair: &'p FamilyPair,
    fib: SequenceCache,
    lucas: SequenceCache,
}

impl<'p> Evaluator<'p> {
    pub fn new(pair: &'p FamilyPair) -> Self {
        Evaluator {
            pair,
            fib: SequenceCache::new(pair.fib.clone()),
            lucas: SequenceCache::new(pair.lucas.clone()),
        }
    }

    pub fn pair(&self) -> &'p FamilyPair {
        self.pair
    }

    fn lift(&self, p: Poly) -> QuadElem {
        QuadElem::from_poly(p, self.pair.delta().clone())
    }

    fn ground_index(idx: &IndexExpr) -> Result<i64, EvalError> {
        idx.as_constant()
            .ok_or_else(|| EvalError::NotGround(idx.to_string()))
    }

    pub fn eval(&mut self, e: &Expr) -> Result<QuadElem, EvalError> {
        Ok(match e {
            Expr::Num(q) => self.lift(Poly::constant(q.clone())),
            Expr::Gp(i) => {
                let t = self.fib.term(Self::ground_index(i)?)?.clone();
                self.lift(t)
            }
            Expr::Gs(i) => {
                let t = self.lucas.term(Self::ground_index(i)?)?.clone();
                self.lift(t)
            }
            Expr::Sym(s) => self.symbol(*s),
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?)?,
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?)?,
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?)?,
            Expr::Div(a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                divide(&num, &den)?
            }
            Expr::Pow(base, i) => {
                let k = Self::ground_index(i)?;
                let k = u64::try_from(k).map_err(|_| EvalError::NegativeExponent(k))?;
                self.eval(base)?.pow(k)
            }
            Expr::Sqrt(a) => {
                let radicand = self.eval(a)?;
                self.sqrt(&radicand)?
            }
        })
    }

    fn symbol(&self, s: Symbol) -> QuadElem {
        let delta = self.pair.delta().clone();
        match s {
            Symbol::D => self.lift(self.pair.d().clone()),
            Symbol::G => self.lift(self.pair.g().clone()),
            Symbol::NegG => self.lift(-self.pair.g()),
            Symbol::Alpha => self.lift(Poly::from_int(i64::from(self.pair.alpha()))),
            Symbol::Delta => self.lift((*delta).clone()),
            Symbol::S => QuadElem::radical(delta),
        }
    }

    /// Square root of a radicand with zero radical part.
    ///
    /// A polynomial square root is preferred. Failing that, a radicand of the
    /// form `w^2 delta` yields `w s`. Either way `w` has positive leading
    /// coefficient and the root is squared back before it is returned.
    fn sqrt(&self, radicand: &QuadElem) -> Result<QuadElem, EvalError> {
        let Some(r) = radicand.as_poly() else {
            return Err(EvalError::NonPolynomialRadicand(radicand.to_string()));
        };
        let root = match r.sqrt() {
            Ok(w) => self.lift(w),
            Err(PolyError::NotASquare) => {
                let w = r
                    .exact_div(self.pair.delta())
                    .and_then(|q| q.sqrt())
                    .map_err(|_| EvalError::NotASquare(r.to_string()))?;
                QuadElem::new(Poly::zero(), w, self.pair.delta().clone())
            }
            Err(e) => return Err(e.into()),
        };
        if root.mul(&root)? != *radicand {
            return Err(EvalError::NotASquare(r.to_string()));
        }
        Ok(root)
    }
}

/// `num / den` in the extension, exact or an error.
fn divide(num: &QuadElem, den: &QuadElem) -> Result<QuadElem, EvalError> {
    if let Some(p) = den.as_poly() {
        if p.is_zero() {
            return Err(PolyError::DivisionByZero.into());
        }
        if let Some(c) = p.as_constant() {
            return Ok(num.scale(&c.recip()));
        }
        return Ok(num.div_poly(p)?);
    }
    // multiply through by the conjugate so the denominator becomes its norm
    let n = den.norm();
    if n.is_zero() {
        return Err(PolyError::DivisionByZero.into());
    }
    Ok(num.mul(&den.conj())?.div_poly(&n)?)
}

/// Evaluates a ground expression with the given evaluator's pair and caches.
pub fn eval_expr(ground: &Expr, evaluator: &mut Evaluator<'_>) -> Result<QuadElem, EvalError> {
    evaluator.eval(ground)
}

/// Binds `alpha` for constraint checking on the given pair.
pub fn with_alpha(assignment: Assignment, pair: &FamilyPair) -> Assignment {
    assignment.with(Var::Alpha, i64::from(pair.alpha()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::pair;
    use crate::identity::parse_identity;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn def(text: &str) -> IdentityDef {
        parse_identity(text).unwrap()
    }

    #[test]
    fn i6_on_fibonacci_at_two() {
        let d = def("identity I6\nvars n\nconstraints n>=1\nlhs alpha*Gs[n]*Gp[n]\nrhs Gp[2n]");
        let pair = pair("fibonacci").unwrap();
        let inst = instantiate(&d, &with_alpha(Assignment::new().with(Var::N, 2), pair)).unwrap();
        let mut ev = Evaluator::new(pair);
        let lhs = eval_expr(&inst.lhs, &mut ev).unwrap();
        let rhs = eval_expr(&inst.rhs, &mut ev).unwrap();
        assert_eq!(lhs.as_poly(), Some(&p("x^3 + 2x")));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cassini_on_jacobsthal_at_two() {
        let d = def("identity P2.1\nvars n\nconstraints n>=1\nlhs Gp[n+1]*Gp[n-1] - Gp[n]^2\nrhs (-1)^n*g^(n-1)");
        let pair = pair("jacobsthal").unwrap();
        let inst = instantiate(&d, &Assignment::new().with(Var::N, 2)).unwrap();
        let mut ev = Evaluator::new(pair);
        assert_eq!(ev.eval(&inst.lhs).unwrap().as_poly(), Some(&p("2x")));
        assert_eq!(ev.eval(&inst.rhs).unwrap().as_poly(), Some(&p("2x")));
    }

    #[test]
    fn power_of_one_is_identity() {
        let d = def("identity I94\nvars n m\nlhs ((alpha*Gs[n] + S*Gp[n])/2)^m\nrhs (alpha*Gs[n*m] + S*Gp[n*m])/2");
        for pr in crate::gfp::pairs() {
            let mut ev = Evaluator::new(pr);
            let inst = instantiate(&d, &Assignment::new().with(Var::N, 3).with(Var::M, 1)).unwrap();
            assert_eq!(
                ev.eval(&inst.lhs).unwrap(),
                ev.eval(&inst.rhs).unwrap(),
                "{}",
                pr.name()
            );
        }
    }

    #[test]
    fn constraint_and_subscript_errors() {
        let d = def("identity I9\nvars n m\nconstraints n>=m\nlhs Gp[n-m]\nrhs 0");
        let a = Assignment::new().with(Var::N, 3).with(Var::M, 5);
        assert!(matches!(
            instantiate(&d, &a),
            Err(InstantiateError::ConstraintViolated { .. })
        ));
        let d = def("identity X\nvars n m\nlhs Gp[n-m]\nrhs 0");
        assert!(matches!(
            instantiate(&d, &a),
            Err(InstantiateError::NegativeSubscript { value: -2, .. })
        ));
        assert_eq!(
            instantiate(&d, &Assignment::new().with(Var::N, 3)),
            Err(InstantiateError::Unbound(Var::M))
        );
    }

    #[test]
    fn catalan_boundary_reaches_index_zero() {
        let d = def("identity P2.2\nvars n m\nconstraints n>=m\nlhs Gp[n]^2 - neg_g^(n-m)*Gp[m]^2\nrhs Gp[n+m]*Gp[n-m]");
        let inst = instantiate(&d, &Assignment::new().with(Var::N, 4).with(Var::M, 4)).unwrap();
        assert!(inst.rhs.to_string().contains("Gp[0]"));
    }

    #[test]
    fn alpha_guard_needs_alpha() {
        let d = def("identity I10\nvars n\nconstraints alpha=1\nlhs 1\nrhs 1");
        let a = Assignment::new().with(Var::N, 1);
        assert_eq!(
            instantiate(&d, &a),
            Err(InstantiateError::Unbound(Var::Alpha))
        );
        let cheb = pair("chebyshev-first").unwrap();
        assert!(matches!(
            instantiate(&d, &with_alpha(a, cheb)),
            Err(InstantiateError::ConstraintViolated { .. })
        ));
        assert!(instantiate(&d, &with_alpha(a, pair("fibonacci").unwrap())).is_ok());
    }

    #[test]
    fn sqrt_of_square_and_of_delta_multiple() {
        let pair = pair("fibonacci").unwrap();
        let mut ev = Evaluator::new(pair);
        let e = crate::identity::parse_expr("sqrt(Gp[3]^2)", &[]).unwrap();
        assert_eq!(ev.eval(&e).unwrap().as_poly(), Some(&p("x^2 + 1")));
        // Delta * G'_2^2 = (x s)^2
        let e = crate::identity::parse_expr("sqrt(Delta*Gp[2]^2)", &[]).unwrap();
        let r = ev.eval(&e).unwrap();
        assert!(r.u().is_zero());
        assert_eq!(r.v(), &p("x"));
        let e = crate::identity::parse_expr("sqrt(d + 1)", &[]).unwrap();
        assert!(matches!(ev.eval(&e), Err(EvalError::NotASquare(_))));
        let e = crate::identity::parse_expr("sqrt(S)", &[]).unwrap();
        assert!(matches!(
            ev.eval(&e),
            Err(EvalError::NonPolynomialRadicand(_))
        ));
    }

    #[test]
    fn division_is_exact_or_reported() {
        let pair = pair("pell").unwrap();
        let mut ev = Evaluator::new(pair);
        let e = crate::identity::parse_expr("(d^2 - 1) / (d + 1)", &[]).unwrap();
        assert_eq!(ev.eval(&e).unwrap().as_poly(), Some(&p("2x - 1")));
        let e = crate::identity::parse_expr("Delta / S", &[]).unwrap();
        assert_eq!(
            ev.eval(&e).unwrap(),
            QuadElem::radical(pair.delta().clone())
        );
        let e = crate::identity::parse_expr("1 / d", &[]).unwrap();
        assert!(matches!(
            ev.eval(&e),
            Err(EvalError::Poly(PolyError::NotDivisible))
        ));
    }
}
