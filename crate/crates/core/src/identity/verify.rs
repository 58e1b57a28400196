use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::gfp::FamilyPair;
use crate::quad::QuadElem;

use super::ast::{CmpOp, IdentityDef};
use super::eval::{instantiate, with_alpha, Evaluator};
use super::index::{Assignment, IndexExpr, Var};
use super::{EvalError, InstantiateError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not_applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub pair: String,
    pub tuples_checked: u64,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "passed/failed/not_applicable: {}/{}/{}",
            self.passed, self.failed, self.not_applicable
        )
    }
}

/// How the grid is walked: free variables are enumerated, variables fixed by
/// an equality constraint are computed from them.
struct Plan {
    enumerated: Vec<(Var, i64, i64)>,
    solved: Vec<(Var, IndexExpr, i64, i64)>,
}

fn plan(def: &IdentityDef, grid_bound: i64) -> Plan {
    let bounds = |v: Var| def.range_of(v).unwrap_or((0, grid_bound));
    let mut solved: Vec<(Var, IndexExpr)> = Vec::new();
    for c in def.constraints.iter().filter(|c| c.op == CmpOp::Eq) {
        if c.lhs.mentions(Var::Alpha) || c.rhs.mentions(Var::Alpha) {
            continue;
        }
        let mut diff = c.lhs.sub(&c.rhs);
        for (v, e) in &solved {
            diff = diff.substitute(*v, e);
        }
        // prefer the latest declared variable so earlier ones stay enumerated
        let pick = def.vars.iter().rev().find_map(|&v| {
            if solved.iter().any(|(w, _)| *w == v) {
                return None;
            }
            diff.solve_for(v).map(|e| (v, e))
        });
        if let Some((v, e)) = pick {
            for (_, prev) in solved.iter_mut() {
                *prev = prev.substitute(v, &e);
            }
            solved.push((v, e));
        }
    }
    Plan {
        enumerated: def
            .vars
            .iter()
            .filter(|v| !solved.iter().any(|(w, _)| w == *v))
            .map(|&v| {
                let (lo, hi) = bounds(v);
                (v, lo, hi)
            })
            .collect(),
        solved: solved
            .into_iter()
            .map(|(v, e)| {
                let (lo, hi) = bounds(v);
                (v, e, lo, hi)
            })
            .collect(),
    }
}

/// Calls `visit` on every in-range tuple in lexicographic order (first
/// declared variable slowest) until it returns `false`.
fn for_each_tuple(plan: &Plan, mut visit: impl FnMut(Assignment) -> bool) {
    let mut current: Vec<i64> = plan.enumerated.iter().map(|&(_, lo, _)| lo).collect();
    loop {
        let mut a = Assignment::new();
        for (&(v, _, _), &x) in plan.enumerated.iter().zip(&current) {
            a.set(v, x);
        }
        let mut in_range = true;
        for (v, e, lo, hi) in &plan.solved {
            let x = e
                .eval(&a)
                .expect("solutions only mention enumerated variables");
            in_range &= (*lo..=*hi).contains(&x);
            a.set(*v, x);
        }
        if in_range && !visit(a) {
            return;
        }
        // odometer step, last variable fastest
        let mut k = current.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if current[k] < plan.enumerated[k].2 {
                current[k] += 1;
                break;
            }
            current[k] = plan.enumerated[k].1;
        }
    }
}

fn render(value: &Result<QuadElem, EvalError>) -> String {
    match value {
        Ok(q) => q.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Verifies one identity on the evaluator's pair over `[0, grid_bound]`
/// (or the identity's own ranges).
///
/// Tuples excluded by a constraint or reaching a negative subscript are
/// skipped, as are tuples whose radicand is not a square. The first tuple on
/// which two sides differ ends the run as a failure.
pub fn verify_with(
    def: &IdentityDef,
    evaluator: &mut Evaluator<'_>,
    grid_bound: i64,
) -> VerificationReport {
    let pair = evaluator.pair();
    let plan = plan(def, grid_bound);
    let mut checked = 0u64;
    let mut counterexample = None;
    for_each_tuple(&plan, |a| {
        let inst = match instantiate(def, &with_alpha(a, pair)) {
            Ok(inst) => inst,
            Err(
                InstantiateError::ConstraintViolated { .. }
                | InstantiateError::NegativeSubscript { .. },
            ) => return true,
            Err(InstantiateError::Unbound(v)) => {
                unreachable!("plan binds every declared variable, not {v}")
            }
        };
        let values: Vec<Result<QuadElem, EvalError>> =
            inst.sides().map(|e| evaluator.eval(e)).collect();
        if values
            .iter()
            .any(|v| matches!(v, Err(EvalError::NotASquare(_))))
        {
            return true;
        }
        checked += 1;
        for w in values.windows(2) {
            let equal = matches!((&w[0], &w[1]), (Ok(l), Ok(r)) if l == r);
            if !equal {
                counterexample = Some(Counterexample {
                    assignment: a.bound().map(|(v, x)| (v.name().to_owned(), x)).collect(),
                    lhs: render(&w[0]),
                    rhs: render(&w[1]),
                });
                return false;
            }
        }
        true
    });
    let status = match (&counterexample, checked) {
        (Some(_), _) => Status::Fail,
        (None, 0) => Status::NotApplicable,
        (None, _) => Status::Pass,
    };
    VerificationReport {
        id: def.id.clone(),
        pair: pair.name(),
        tuples_checked: checked,
        status,
        counterexample,
    }
}

pub fn verify_identity(
    def: &IdentityDef,
    pair: &FamilyPair,
    grid_bound: i64,
) -> VerificationReport {
    verify_with(def, &mut Evaluator::new(pair), grid_bound)
}

/// Verifies every identity on every pair using `jobs` worker threads.
///
/// Reports come back identity-major in input order whatever `jobs` is.
pub fn verify_corpus(
    corpus: &[IdentityDef],
    pairs: &[FamilyPair],
    grid_bound: i64,
    jobs: usize,
) -> Vec<VerificationReport> {
    let tasks: Vec<(usize, usize)> = (0..corpus.len())
        .flat_map(|i| (0..pairs.len()).map(move |p| (i, p)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        tasks
            .par_iter()
            .with_max_len(1)
            .map_init(
                || pairs.iter().map(Evaluator::new).collect::<Vec<_>>(),
                |evaluators, &(i, p)| verify_with(&corpus[i], &mut evaluators[p], grid_bound),
            )
            .collect()
    })
}

pub fn render_json(reports: &[VerificationReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

/// Fixed-width table, one row per report, with counterexamples indented below
/// failing rows.
pub fn render_table(reports: &[VerificationReport]) -> String {
    let id_w = reports.iter().map(|r| r.id.len()).max().unwrap_or(0).max(2);
    let pair_w = reports
        .iter()
        .map(|r| r.pair.len())
        .max()
        .unwrap_or(0)
        .max(4);
    let mut out = format!(
        "{:id_w$}  {:pair_w$}  {:>7}  status\n",
        "id", "pair", "tuples"
    );
    for r in reports {
        out.push_str(&format!(
            "{:id_w$}  {:pair_w$}  {:>7}  {}\n",
            r.id, r.pair, r.tuples_checked, r.status
        ));
        if let Some(c) = &r.counterexample {
            let at: Vec<String> = c
                .assignment
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            out.push_str(&format!("    at {}: lhs = {}\n", at.join(", "), c.lhs));
            out.push_str(&format!(
                "    {:w$}  rhs = {}\n",
                "",
                c.rhs,
                w = at.join(", ").len() + 2
            ));
        }
    }
    out
}
