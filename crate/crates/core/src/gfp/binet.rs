//! Closed-form evaluation through the roots of `z^2 - d z - g`.

use num_rational::BigRational;
use serde::Serialize;

use crate::poly::Poly;
use crate::quad::QuadElem;

use super::{FamilySpec, GfpError, Kind, SequenceCache};

/// `a = (d + s)/2` and `b = (d - s)/2` with `s^2 = d^2 + 4g`.
pub fn roots_of(family: &FamilySpec) -> (QuadElem, QuadElem) {
    let half = BigRational::new(1.into(), 2.into());
    let a = QuadElem::new(
        family.d.scale(&half),
        Poly::constant(half),
        family.delta.clone(),
    );
    let b = a.conj();
    (a, b)
}

/// `G_n` from the Binet formula of the family's kind:
/// `(a^n + b^n) / alpha` for Lucas type, `(a^n - b^n) / (a - b)` for
/// Fibonacci type.
pub fn binet_term(family: &FamilySpec, n: i64) -> Result<Poly, GfpError> {
    let exp = u64::try_from(n).map_err(|_| GfpError::NegativeIndex(n))?;
    let (a, _) = roots_of(family);
    let an = a.pow(exp);
    let bn = an.conj();
    match family.kind {
        Kind::LucasType => {
            let (u, v) = an.add(&bn).expect("conjugates share delta").into_parts();
            if !v.is_zero() {
                return Err(GfpError::NonZeroRadicalPart {
                    family: family.name.clone(),
                    n,
                });
            }
            let value = u.scale(&family.alpha_rational().recip());
            if !value.has_integer_coeffs() {
                return Err(GfpError::InexactAlphaDivision {
                    family: family.name.clone(),
                    n,
                });
            }
            Ok(value)
        }
        Kind::FibonacciType => {
            // a^n - b^n has no rational part; its s-coefficient is the quotient by s
            let (u, v) = an.sub(&bn).expect("conjugates share delta").into_parts();
            if !u.is_zero() {
                return Err(GfpError::NonZeroRadicalPart {
                    family: family.name.clone(),
                    n,
                });
            }
            Ok(v)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub max_n: i64,
    pub checks: Vec<Check>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check_eq(name: &str, lhs: &Poly, rhs: &Poly) -> Check {
    Check {
        name: name.to_owned(),
        passed: lhs == rhs,
        detail: (lhs != rhs).then(|| format!("{lhs} != {rhs}")),
    }
}

/// Runs the structural, root and closed-form checks on one family.
///
/// The `(a - b)^2` forms use the Lucas- and Fibonacci-type sequences built
/// from the family's own `d`, `g` and `alpha`, so unpartnered families are
/// checked the same way as paired ones.
pub fn check_family(family: &FamilySpec, max_n: i64) -> FamilyReport {
    let mut checks = Vec::new();
    let violations = family.violations();
    checks.push(Check {
        name: "registry invariants".into(),
        passed: violations.is_empty(),
        detail: (!violations.is_empty()).then(|| violations.join("; ")),
    });

    let (a, b) = roots_of(family);
    let sum = a.add(&b).expect("same delta");
    let prod = a.mul(&b).expect("same delta");
    let diff = a.sub(&b).expect("same delta");
    let diff_sq = diff.mul(&diff).expect("same delta");
    let quad_check = |name: &str, e: &QuadElem, want: &Poly| Check {
        name: name.to_owned(),
        passed: e.as_poly() == Some(want),
        detail: (e.as_poly() != Some(want)).then(|| format!("{e} != {want}")),
    };
    checks.push(quad_check("a + b = d", &sum, &family.d));
    checks.push(quad_check("a b = -g", &prod, &-&family.g));
    let disc = super::registry::discriminant(&family.d, &family.g);
    checks.push(quad_check("(a - b)^2 = d^2 + 4g", &diff_sq, &disc));
    checks.push(check_eq("delta = d^2 + 4g", &family.delta, &disc));

    let mut lucas = SequenceCache::new(family.lucas_companion());
    let mut fib = SequenceCache::new(family.fibonacci_companion());
    let two_g = family.g.scale(&BigRational::from_integer(2.into()));
    let three_g = family.g.scale(&BigRational::from_integer(3.into()));
    let lucas2 = lucas
        .term(2)
        .expect("nonnegative")
        .scale(&family.alpha_rational());
    checks.push(check_eq(
        "alpha G*_2 + 2g = delta",
        &(&lucas2 + &two_g),
        &family.delta,
    ));
    let fib3 = fib.term(3).expect("nonnegative").clone();
    checks.push(check_eq(
        "G'_3 + 3g = delta",
        &(&fib3 + &three_g),
        &family.delta,
    ));

    let mut own = SequenceCache::new(family.clone());
    let mut first_mismatch = None;
    for n in 0..=max_n.max(0) {
        let rec = own.term(n).expect("nonnegative").clone();
        match binet_term(family, n) {
            Ok(closed) if closed == rec => {}
            Ok(closed) => {
                first_mismatch = Some(format!("n = {n}: binet {closed} != recurrence {rec}"));
                break;
            }
            Err(e) => {
                first_mismatch = Some(format!("n = {n}: {e}"));
                break;
            }
        }
    }
    checks.push(Check {
        name: format!("binet = recurrence for 0 <= n <= {max_n}"),
        passed: first_mismatch.is_none(),
        detail: first_mismatch,
    });

    FamilyReport {
        family: family.name.clone(),
        max_n,
        checks,
    }
}
