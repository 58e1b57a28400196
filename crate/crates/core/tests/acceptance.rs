//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any of them fails. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gfpkit::gfp::{check_family, family, pair, pairs, registry, roots_of};
use gfpkit::identity::{load_corpus, parse_identity, verify_identity, IdentityDef, Status};

use common::{bumped_literals, doubled_terms};
use gfpkit::gfp::binet_term;
use gfpkit::{Poly, SequenceCache};

const FAMILIES_LIMIT: Duration = Duration::from_secs(1);
const BINET_LIMIT: Duration = Duration::from_secs(5);
const CORPUS_LIMIT: Duration = Duration::from_secs(300);
const BINET_MAX_N: i64 = 32;
const WORKED_EXAMPLE_MAX_N: i64 = 16;
const PROP2_GRID: i64 = 10;
const CORPUS_GRID: i64 = 8;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn poly(s: &str) -> Poly {
    s.parse()
        .unwrap_or_else(|e| panic!("bad polynomial {s:?}: {e}"))
}

fn times(p: &Poly, k: i64) -> Poly {
    p * &Poly::from_int(k)
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gfpkit")
        .chain(args.iter().copied())
        .map(String::from);
    let code = gfpkit::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Reference rows: name, symbol, p0, p1, d, g.
const FAMILY_ROWS: [(&str, &str, &str, &str, &str, &str); 13] = [
    ("fibonacci", "F", "0", "1", "x", "1"),
    ("lucas", "D", "2", "x", "x", "1"),
    ("pell", "P", "0", "1", "2x", "1"),
    ("pell-lucas", "Q", "2", "2x", "2x", "1"),
    ("pell-lucas-prime", "Q'", "1", "x", "2x", "1"),
    ("fermat", "Phi", "0", "1", "3x", "-2"),
    ("fermat-lucas", "theta", "2", "3x", "3x", "-2"),
    ("chebyshev-second", "U", "0", "1", "2x", "-1"),
    ("chebyshev-first", "T", "1", "x", "2x", "-1"),
    ("jacobsthal", "J", "0", "1", "1", "2x"),
    ("jacobsthal-lucas", "j", "2", "1", "1", "2x"),
    ("morgan-voyce-b", "B", "0", "1", "x+2", "-1"),
    ("morgan-voyce-c", "C", "2", "x+2", "x+2", "-1"),
];

// Reference pair rows: lucas symbol, fibonacci symbol, alpha, d, g, a, b.
const PAIR_ROWS: [(&str, &str, u32, &str, &str, &str, &str); 6] = [
    (
        "D",
        "F",
        1,
        "x",
        "1",
        "(x+sqrt(x^2+4))/2",
        "(x-sqrt(x^2+4))/2",
    ),
    ("Q'", "P", 1, "2x", "1", "x+sqrt(x^2+1)", "x-sqrt(x^2+1)"),
    (
        "theta",
        "Phi",
        1,
        "3x",
        "-2",
        "(3x+sqrt(9x^2-8))/2",
        "(3x-sqrt(9x^2-8))/2",
    ),
    ("T", "U", 2, "2x", "-1", "x+sqrt(x^2-1)", "x-sqrt(x^2-1)"),
    (
        "j",
        "J",
        1,
        "1",
        "2x",
        "(1+sqrt(1+8x))/2",
        "(1-sqrt(1+8x))/2",
    ),
    (
        "C",
        "B",
        1,
        "x+2",
        "-1",
        "(x+2+sqrt(x^2+4x))/2",
        "(x+2-sqrt(x^2+4x))/2",
    ),
];

/// A root written as `P ± sqrt(R)` or `(P ± sqrt(R))/2`, reduced to
/// `(d', sign, delta')` with the root equal to `(d' + sign*sqrt(delta'))/2`.
fn parse_root(text: &str) -> (Poly, i32, Poly) {
    let t: String = text
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    let (body, halved) = match t.strip_prefix('(').and_then(|r| r.strip_suffix(")/2")) {
        Some(inner) => (inner.to_owned(), true),
        None => (t.clone(), false),
    };
    let at = body
        .find("sqrt(")
        .unwrap_or_else(|| panic!("no sqrt in {text:?}"));
    let sign = if body[..at].ends_with('+') { 1 } else { -1 };
    let p = poly(&body[..at - 1]);
    let r = poly(
        body[at + 5..]
            .strip_suffix(')')
            .unwrap_or_else(|| panic!("unbalanced {text:?}")),
    );
    if halved {
        (p, sign, r)
    } else {
        (times(&p, 2), sign, times(&r, 4))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (code, json, _) = run_cli(&["families", "--format", "json"]);
    let (text_code, text, _) = run_cli(&["families"]);
    let elapsed = start.elapsed();
    ensure(code == 0 && text_code == 0, || {
        format!("families exited {code}/{text_code}")
    })?;
    let v: serde_json::Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;

    let fams = v["families"].as_array().ok_or("no families array")?;
    ensure(fams.len() == FAMILY_ROWS.len(), || {
        format!("{} families", fams.len())
    })?;
    for (f, (name, sym, p0, p1, d, g)) in fams.iter().zip(FAMILY_ROWS) {
        let got = |k: &str| f[k].as_str().unwrap_or_default().to_owned();
        ensure(got("name") == name && got("symbol") == sym, || {
            format!("row {name}: got {f}")
        })?;
        for (key, want) in [("p0", p0), ("p1", p1), ("d", d), ("g", g)] {
            ensure(poly(&got(key)) == poly(want), || {
                format!("{name}.{key} = {} (want {want})", got(key))
            })?;
        }
        ensure(
            poly(&got("delta")) == poly(d).pow(2) + times(&poly(g), 4),
            || format!("{name}.delta"),
        )?;
        ensure(
            text.lines()
                .any(|l| l.split_whitespace().next() == Some(name)),
            || format!("{name} missing from text"),
        )?;
    }

    let prs = v["pairs"].as_array().ok_or("no pairs array")?;
    ensure(prs.len() == PAIR_ROWS.len(), || {
        format!("{} pairs", prs.len())
    })?;
    let mut deviations = Vec::new();
    for (p, (ls, fs, alpha, d, g, a, b)) in prs.iter().zip(PAIR_ROWS) {
        let got = |k: &str| p[k].as_str().unwrap_or_default().to_owned();
        ensure(
            got("lucas_type") == ls && got("fibonacci_type") == fs,
            || format!("pair {ls}/{fs}: got {p}"),
        )?;
        ensure(
            poly(&got("d")) == poly(d) && poly(&got("g")) == poly(g),
            || format!("pair {ls}/{fs}: d, g"),
        )?;
        for (key, want) in [("a", a), ("b", b)] {
            ensure(parse_root(&got(key)) == parse_root(want), || {
                format!("pair {ls}/{fs}: {key} = {}", got(key))
            })?;
            let (dd, _, delta) = parse_root(want);
            ensure(
                dd == poly(d) && delta == poly(d).pow(2) + times(&poly(g), 4),
                || format!("pair {ls}/{fs}: reference {key} inconsistent with d, g"),
            )?;
        }
        let got_alpha = p["alpha"].as_u64().unwrap_or(0) as u32;
        if got_alpha != alpha {
            // Accept a differing alpha only when the reference value breaks the closed form.
            let lucas = registry()
                .iter()
                .find(|f| f.symbol == ls)
                .ok_or("unknown symbol")?;
            let mut forced = lucas.clone();
            forced.alpha = alpha;
            ensure(
                !check_family(&forced, 4).passed() && check_family(lucas, BINET_MAX_N).passed(),
                || format!("pair {ls}/{fs}: alpha {got_alpha} (want {alpha})"),
            )?;
            deviations.push(format!("{ls}/{fs} alpha {got_alpha} where reference prints {alpha}, which fails the closed form"));
        }
    }
    ensure(elapsed < FAMILIES_LIMIT, || format!("took {elapsed:?}"))?;
    let mut msg = format!("13 families, 6 pairs, {elapsed:.2?}");
    for d in deviations {
        msg += &format!("; documented deviation: {d}");
    }
    Ok(msg)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for f in registry() {
        let mut cache = SequenceCache::new(f.clone());
        for n in 0..=BINET_MAX_N {
            let closed = binet_term(f, n).map_err(|e| format!("{} n={n}: {e}", f.name))?;
            let rec = cache.term(n).map_err(|e| e.to_string())?;
            ensure(&closed == rec, || {
                format!("{} n={n}: {closed} != {rec}", f.name)
            })?;
            checks += 1;
        }
        let report = check_family(f, BINET_MAX_N);
        ensure(report.passed(), || {
            format!("{}: {:?}", f.name, report.failures().collect::<Vec<_>>())
        })?;
    }
    let elapsed = start.elapsed();
    ensure(checks >= 390, || format!("only {checks} checks"))?;
    ensure(elapsed < BINET_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{checks} exact checks, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let corpus = load_corpus(&corpus_dir()).map_err(|e| e.to_string())?;
    let i1 = corpus.iter().find(|d| d.id == "I1").ok_or("I1 missing")?;

    // Chebyshev: (4x^2 - 4) U_n = 2 (T_{n+1} - T_{n-1})
    let mut u = SequenceCache::new(family("chebyshev-second").unwrap().clone());
    let mut t = SequenceCache::new(family("chebyshev-first").unwrap().clone());
    // Jacobsthal: (1 + 8x) J_n = j_{n+1} + 2x j_{n-1}
    let mut jf = SequenceCache::new(family("jacobsthal").unwrap().clone());
    let mut jl = SequenceCache::new(family("jacobsthal-lucas").unwrap().clone());
    for n in 1..=WORKED_EXAMPLE_MAX_N {
        let lhs = poly("4x^2 - 4") * u.term(n).unwrap().clone();
        let rhs = times(
            &(t.term(n + 1).unwrap().clone() - t.term(n - 1).unwrap().clone()),
            2,
        );
        ensure(lhs == rhs, || format!("chebyshev n={n}"))?;
        let lhs = poly("1 + 8x") * jf.term(n).unwrap().clone();
        let rhs = jl.term(n + 1).unwrap().clone() + poly("2x") * jl.term(n - 1).unwrap().clone();
        ensure(lhs == rhs, || format!("jacobsthal n={n}"))?;
    }
    let mut tuples = 0;
    for name in ["chebyshev-first", "jacobsthal"] {
        let r = verify_identity(i1, pair(name).unwrap(), WORKED_EXAMPLE_MAX_N);
        ensure(
            r.status == Status::Pass && r.tuples_checked == WORKED_EXAMPLE_MAX_N as u64,
            || format!("{r:?}"),
        )?;
        tuples += r.tuples_checked;
    }
    Ok(format!("I1 on chebyshev and jacobsthal pairs, 1 <= n <= {WORKED_EXAMPLE_MAX_N}, {tuples} corpus tuples"))
}

fn criterion_4() -> Outcome {
    for p in pairs() {
        let mut lucas = SequenceCache::new(p.lucas.clone());
        let mut fib = SequenceCache::new(p.fib.clone());
        let g = p.g().clone();
        let a1 = times(lucas.term(2).unwrap(), p.alpha().into()) + times(&g, 2);
        let a2 = fib.term(3).unwrap().clone() + times(&g, 3);
        let a3 = p.d().pow(2) + times(&g, 4);
        let (a, b) = roots_of(&p.fib);
        let diff = a.sub(&b).map_err(|e| e.to_string())?;
        let squared = diff.mul(&diff).map_err(|e| e.to_string())?;
        ensure(
            a1 == a3 && a2 == a3 && squared.as_poly() == Some(&a3),
            || format!("{}: {a1} | {a2} | {a3}", p.name()),
        )?;
    }
    Ok("alpha G*_2 + 2g = G'_3 + 3g = d^2 + 4g = (a-b)^2 on 6 pairs".into())
}

fn fails_everywhere(def: &IdentityDef) -> Result<(), String> {
    for p in pairs() {
        let r = verify_identity(def, p, PROP2_GRID);
        ensure(
            r.status == Status::Fail && r.counterexample.is_some(),
            || format!("mutant {} -> {} on {}", def.lhs, r.status, p.name()),
        )?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut mutants = 0;
    let mut index_mutants = 0;
    for id in ["P2.1", "P2.2"] {
        let text = std::fs::read_to_string(corpus_dir().join(format!("{id}.gfpid")))
            .map_err(|e| e.to_string())?;
        let def = parse_identity(&text).map_err(|e| e.to_string())?;
        for p in pairs() {
            let r = verify_identity(&def, p, PROP2_GRID);
            ensure(r.status == Status::Pass, || {
                format!("{id} on {}: {}", p.name(), r.status)
            })?;
        }
        for side in 0..2 {
            let original = if side == 0 { &def.lhs } else { &def.rhs };
            for m in doubled_terms(original) {
                let mut mutant = def.clone();
                *(if side == 0 {
                    &mut mutant.lhs
                } else {
                    &mut mutant.rhs
                }) = m;
                fails_everywhere(&mutant)?;
                mutants += 1;
            }
        }
        for (m, coefficient) in bumped_literals(&text) {
            let mutant = parse_identity(&m).map_err(|e| e.to_string())?;
            if coefficient {
                fails_everywhere(&mutant)?;
                mutants += 1;
            } else {
                ensure(
                    pairs()
                        .iter()
                        .any(|p| verify_identity(&mutant, p, PROP2_GRID).status == Status::Fail),
                    || {
                        format!(
                            "index mutant {} = {} passes on every pair",
                            mutant.lhs, mutant.rhs
                        )
                    },
                )?;
                index_mutants += 1;
            }
        }
    }
    Ok(format!("Cassini and Catalan pass on 6 pairs at grid {PROP2_GRID}; {mutants} coefficient mutants fail on every pair, {index_mutants} index mutants fail on some pair"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let (code, json, err) = run_cli(&[
        "verify",
        "--format",
        "json",
        "--max-index",
        &CORPUS_GRID.to_string(),
    ]);
    let elapsed = start.elapsed();
    ensure(code == 0 || code == 1, || {
        format!("verify exited {code}: {err}")
    })?;
    let reports: Vec<serde_json::Value> = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let corpus = load_corpus(&corpus_dir()).map_err(|e| e.to_string())?;
    ensure(corpus.len() == 100, || {
        format!("{} identities", corpus.len())
    })?;
    ensure(reports.len() == corpus.len() * pairs().len(), || {
        format!("{} reports", reports.len())
    })?;

    let mut seen: BTreeMap<(String, String), String> = BTreeMap::new();
    for r in &reports {
        let id = r["id"].as_str().unwrap_or_default().to_owned();
        let pr = r["pair"].as_str().unwrap_or_default().to_owned();
        let status = r["status"].as_str().unwrap_or_default().to_owned();
        seen.insert((id.clone(), pr.clone()), status.clone());
        let def = corpus
            .iter()
            .find(|d| d.id == id)
            .ok_or_else(|| format!("unknown id {id}"))?;
        let annotated = def.known_failures.contains(&pr);
        match status.as_str() {
            "pass" | "not_applicable" => ensure(!annotated, || {
                format!("{id} on {pr} annotated as failing but {status}")
            })?,
            "fail" => {
                ensure(annotated, || {
                    format!("unexpected fail: {id} on {pr}: {}", r["counterexample"])
                })?;
                ensure(
                    r["counterexample"]["assignment"]
                        .as_object()
                        .is_some_and(|a| !a.is_empty()),
                    || format!("{id} on {pr}: no counterexample tuple"),
                )?;
            }
            other => return Err(format!("{id} on {pr}: status {other}")),
        }
    }
    for def in &corpus {
        for p in pairs() {
            ensure(seen.contains_key(&(def.id.clone(), p.name())), || {
                format!("missing report {} on {}", def.id, p.name())
            })?;
        }
    }
    let annotated: Vec<&str> = corpus
        .iter()
        .filter(|d| !d.known_failures.is_empty())
        .map(|d| d.id.as_str())
        .collect();
    for id in &annotated {
        let text = std::fs::read_to_string(corpus_dir().join(format!("{id}.gfpid"))).unwrap();
        ensure(
            text.lines().filter(|l| l.starts_with('#')).count() >= 1,
            || format!("{id}: no domain comment"),
        )?;
    }
    ensure(elapsed < CORPUS_LIMIT, || format!("took {elapsed:?}"))?;
    let summary = err.lines().last().unwrap_or_default().to_owned();
    Ok(format!(
        "{} reports, {summary}, fails only where annotated ({}), {elapsed:.2?}",
        reports.len(),
        annotated.join(" ")
    ))
}

fn criterion_7() -> Outcome {
    let (c1, j1, _) = run_cli(&["verify", "--format", "json", "--jobs", "1"]);
    let (c8, j8, _) = run_cli(&["verify", "--format", "json", "--jobs", "8"]);
    ensure(c1 == c8, || format!("exit codes {c1} vs {c8}"))?;
    ensure(j1 == j8, || {
        "JSON differs between --jobs 1 and --jobs 8".into()
    })?;
    Ok(format!("{} bytes identical", j1.len()))
}

fn criterion_8() -> Outcome {
    let mut got = Vec::new();
    for (fam, n, want) in [
        ("fibonacci", "5", "5"),
        ("lucas", "4", "7"),
        ("pell", "3", "5"),
    ] {
        let (code, out, err) = run_cli(&["eval", "--family", fam, "--n", n, "--x", "1"]);
        ensure(code == 0 && out.trim() == want, || {
            format!("{fam} {n}: exit {code}, {out:?} {err}")
        })?;
        got.push(format!("{fam}({n}) = {want}"));
    }
    Ok(got.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("registry fidelity", criterion_1),
        ("binet/recurrence agreement", criterion_2),
        ("worked examples", criterion_3),
        ("(a-b)^2 triple identity", criterion_4),
        ("cassini and catalan", criterion_5),
        ("full corpus", criterion_6),
        ("determinism", criterion_7),
        ("numeric sanity", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} {name}: pass ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
