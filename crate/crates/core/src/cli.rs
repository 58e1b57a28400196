//! The `gfpkit` command line.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 usage, parse or
//! unknown-family errors, 3 invalid numeric arguments.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::gfp::{check_family, pairs, registry, FamilyPair, FamilySpec, SequenceCache};
use crate::identity::{load_corpus, render_json, render_table, verify_corpus, Status, Summary};
use crate::poly::Poly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub const DEFAULT_GRID_BOUND: i64 = 8;

#[derive(Debug, Parser)]
#[command(
    name = "gfpkit",
    version,
    about = "Generalized Fibonacci polynomials: generation, closed forms and identity verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print G_0 ..= G_n of a family, one polynomial per line.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Verify the identity corpus on equivalent pairs.
    Verify {
        /// Corpus directory; falls back to GFPKIT_CORPUS, then the bundled corpus.
        #[arg(long, env = "GFPKIT_CORPUS")]
        corpus: Option<PathBuf>,
        /// Comma-separated pair selectors (pair name, either member, or `all`).
        #[arg(long, default_value = "all")]
        families: String,
        /// Comma-separated identity ids; all identities when absent.
        #[arg(long)]
        identity: Option<String>,
        /// Grid bound for every index variable.
        #[arg(long, allow_hyphen_values = true)]
        max_index: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long, allow_hyphen_values = true)]
        jobs: Option<String>,
    },
    /// Compare the Binet closed forms against the recurrence.
    BinetCheck {
        /// Comma-separated family names, or `all`.
        #[arg(long, alias = "families", default_value = "all")]
        family: String,
        #[arg(long, allow_hyphen_values = true, default_value = "32")]
        max_n: String,
    },
    /// List the registered families and the equivalent pairs.
    Families {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate G_n at a rational point `p/q`.
    Eval {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

/// A failed command: exit code and message for stderr.
struct Failure(i32, String);

type CmdResult = Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn numeric(msg: impl Into<String>) -> Failure {
    Failure(EXIT_NUMERIC, msg.into())
}

fn io(e: std::io::Error) -> Failure {
    Failure(EXIT_USAGE, format!("write failed: {e}"))
}

fn parse_int(flag: &str, s: &str, min: i64) -> Result<i64, Failure> {
    match s.trim().parse::<i64>() {
        Ok(v) if v >= min => Ok(v),
        Ok(v) => Err(numeric(format!("--{flag} must be at least {min}, got {v}"))),
        Err(_) => Err(numeric(format!("--{flag}: `{s}` is not an integer"))),
    }
}

fn parse_rational(flag: &str, s: &str) -> Result<BigRational, Failure> {
    let bad = || numeric(format!("--{flag}: `{s}` is not a rational number p/q"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(numeric(format!("--{flag}: zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

fn lookup_family(name: &str) -> Result<&'static FamilySpec, Failure> {
    crate::gfp::family(name).ok_or_else(|| {
        let known: Vec<&str> = registry().iter().map(|f| f.name.as_str()).collect();
        usage(format!(
            "unknown family `{name}` (known: {})",
            known.join(", ")
        ))
    })
}

fn select_families(selector: &str) -> Result<Vec<FamilySpec>, Failure> {
    let mut out: Vec<FamilySpec> = Vec::new();
    for s in selector.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let chosen: Vec<&FamilySpec> = if s == "all" {
            registry().iter().collect()
        } else {
            vec![lookup_family(s)?]
        };
        for f in chosen {
            if !out.iter().any(|g| g.name == f.name) {
                out.push(f.clone());
            }
        }
    }
    if out.is_empty() {
        return Err(usage("no family selected"));
    }
    Ok(out)
}

fn select_pairs(selector: &str) -> Result<Vec<FamilyPair>, Failure> {
    let mut out: Vec<FamilyPair> = Vec::new();
    for s in selector.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let chosen: Vec<&FamilyPair> = if s == "all" {
            pairs().iter().collect()
        } else {
            match crate::gfp::pair(s) {
                Some(p) => vec![p],
                None if crate::gfp::family(s).is_some() => {
                    return Err(usage(format!("family `{s}` has no equivalent partner")))
                }
                None => {
                    let known: Vec<String> = pairs().iter().map(FamilyPair::name).collect();
                    return Err(usage(format!(
                        "unknown family `{s}` (pairs: {})",
                        known.join(", ")
                    )));
                }
            }
        };
        for p in chosen {
            if !out.iter().any(|q| q.name() == p.name()) {
                out.push(p.clone());
            }
        }
    }
    // registry order regardless of how the selectors were listed
    out.sort_by_key(|p| pairs().iter().position(|q| q.name() == p.name()));
    if out.is_empty() {
        return Err(usage("no family selected"));
    }
    Ok(out)
}

fn cmd_gen(family: &str, n: &str, out: &mut dyn Write) -> CmdResult {
    let f = lookup_family(family)?;
    let n = parse_int("n", n, 0)?;
    let mut cache = SequenceCache::new(f.clone());
    for t in cache.terms_through(n).expect("n is nonnegative") {
        writeln!(out, "{t}").map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_eval(family: &str, n: &str, x: &str, out: &mut dyn Write) -> CmdResult {
    let f = lookup_family(family)?;
    let n = parse_int("n", n, 0)?;
    let x0 = parse_rational("x", x)?;
    let mut cache = SequenceCache::new(f.clone());
    let value = cache.term(n).expect("n is nonnegative").eval(&x0);
    writeln!(out, "{value}").map_err(io)?;
    Ok(EXIT_OK)
}

/// Runs the closed-form checks on each family and prints one line per family,
/// followed by the failing checks. Returns 0 iff every family passes.
pub fn binet_check_families(families: &[FamilySpec], max_n: i64, out: &mut dyn Write) -> i32 {
    let mut failed = 0usize;
    let result: std::io::Result<()> = (|| {
        for f in families {
            let report = check_family(f, max_n);
            let status = if report.passed() { "pass" } else { "FAIL" };
            writeln!(
                out,
                "{status}  {:<18} {} checks, 0 <= n <= {max_n}",
                f.name,
                report.checks.len()
            )?;
            for c in report.failures() {
                failed += 1;
                writeln!(
                    out,
                    "      {}: {}",
                    c.name,
                    c.detail.as_deref().unwrap_or("")
                )?;
            }
        }
        Ok(())
    })();
    if result.is_err() {
        return EXIT_USAGE;
    }
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURES
    }
}

fn cmd_binet_check(family: &str, max_n: &str, out: &mut dyn Write) -> CmdResult {
    let families = select_families(family)?;
    let max_n = parse_int("max-n", max_n, 0)?;
    Ok(binet_check_families(&families, max_n, out))
}

/// Largest integer `k` with `k^2` dividing every coefficient of `p`.
fn square_content(p: &Poly) -> BigInt {
    let g = p
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::zero(), |acc, c| acc.gcd(&c.to_integer()));
    let mut k = BigInt::from(1);
    let mut f = BigInt::from(2);
    let mut rest = g.abs();
    while &f * &f <= rest {
        let sq = &f * &f;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            k *= &f;
        }
        f += 1;
    }
    k
}

/// Root `a` or `b` in the reduced form `(d ± k sqrt(delta/k^2))/2`.
pub fn root_display(pair: &FamilyPair, sign: char) -> String {
    let d = pair.d();
    let delta = &**pair.delta();
    let k = square_content(delta);
    let kr = BigRational::from_integer(k.clone());
    let reduced = delta.scale(&(&kr * &kr).recip());
    let radical = format!("sqrt({reduced})");
    let two = BigInt::from(2);
    let d_even = d
        .coeffs()
        .iter()
        .all(|c| c.is_integer() && c.to_integer().is_even());
    if d_even && k.is_even() {
        let half = d.scale(&BigRational::new(1.into(), 2.into()));
        let k2 = &k / &two;
        let coeff = if k2 == BigInt::from(1) {
            String::new()
        } else {
            format!("{k2}*")
        };
        format!("{half} {sign} {coeff}{radical}")
    } else {
        let coeff = if k == BigInt::from(1) {
            String::new()
        } else {
            format!("{k}*")
        };
        format!("({d} {sign} {coeff}{radical})/2")
    }
}

#[derive(Serialize)]
struct FamilyRow {
    name: String,
    symbol: String,
    kind: String,
    p0: String,
    p1: String,
    d: String,
    g: String,
    alpha: u32,
    delta: String,
    partner: Option<String>,
}

#[derive(Serialize)]
struct PairRow {
    pair: String,
    lucas_type: String,
    fibonacci_type: String,
    alpha: u32,
    d: String,
    g: String,
    a: String,
    b: String,
}

#[derive(Serialize)]
struct FamiliesListing {
    families: Vec<FamilyRow>,
    pairs: Vec<PairRow>,
}

fn listing() -> FamiliesListing {
    FamiliesListing {
        families: registry()
            .iter()
            .map(|f| FamilyRow {
                name: f.name.clone(),
                symbol: f.symbol.clone(),
                kind: f.kind.to_string(),
                p0: f.p0.to_string(),
                p1: f.p1.to_string(),
                d: f.d.to_string(),
                g: f.g.to_string(),
                alpha: f.alpha,
                delta: f.delta.to_string(),
                partner: f.partner.clone(),
            })
            .collect(),
        pairs: pairs()
            .iter()
            .map(|p| PairRow {
                pair: p.name(),
                lucas_type: p.lucas.symbol.clone(),
                fibonacci_type: p.fib.symbol.clone(),
                alpha: p.alpha(),
                d: p.d().to_string(),
                g: p.g().to_string(),
                a: root_display(p, '+'),
                b: root_display(p, '-'),
            })
            .collect(),
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:w$}"))
            .collect();
        padded.join("  ").trim_end().to_owned() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn cmd_families(format: Format, out: &mut dyn Write) -> CmdResult {
    let l = listing();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&l).expect("listing serializes") + "\n",
        Format::Text => {
            let rows: Vec<Vec<String>> = l
                .families
                .iter()
                .map(|f| {
                    vec![
                        f.name.clone(),
                        f.symbol.clone(),
                        f.kind.clone(),
                        f.p0.clone(),
                        f.p1.clone(),
                        f.d.clone(),
                        f.g.clone(),
                        f.alpha.to_string(),
                        f.delta.clone(),
                        f.partner.clone().unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect();
            let pair_rows: Vec<Vec<String>> = l
                .pairs
                .iter()
                .map(|p| {
                    vec![
                        p.lucas_type.clone(),
                        p.fibonacci_type.clone(),
                        p.alpha.to_string(),
                        p.d.clone(),
                        p.g.clone(),
                        p.a.clone(),
                        p.b.clone(),
                    ]
                })
                .collect();
            format!(
                "{}\n{}",
                table(
                    &[
                        "family", "symbol", "kind", "p0", "p1", "d", "g", "alpha", "delta",
                        "partner"
                    ],
                    &rows
                ),
                table(
                    &["lucas-type", "fibonacci-type", "alpha", "d", "g", "a", "b"],
                    &pair_rows
                )
            )
        }
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

fn bundled_corpus() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    corpus: Option<PathBuf>,
    families: &str,
    identity: Option<&str>,
    max_index: Option<&str>,
    format: Format,
    jobs: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let pairs = select_pairs(families)?;
    let grid = match max_index {
        Some(s) => parse_int("max-index", s, 1)?,
        None => DEFAULT_GRID_BOUND,
    };
    let jobs = match jobs {
        Some(s) => parse_int("jobs", s, 1)? as usize,
        None => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
    };
    let dir = corpus.unwrap_or_else(bundled_corpus);
    let mut defs = load_corpus(&dir).map_err(|e| usage(e.to_string()))?;
    if let Some(ids) = identity {
        let wanted: Vec<&str> = ids
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        if let Some(missing) = wanted.iter().find(|id| !defs.iter().any(|d| d.id == **id)) {
            return Err(usage(format!(
                "no identity `{missing}` in {}",
                dir.display()
            )));
        }
        defs.retain(|d| wanted.contains(&d.id.as_str()));
    }

    let reports = verify_corpus(&defs, &pairs, grid, jobs);
    let summary = Summary::of(&reports);
    match format {
        Format::Json => {
            writeln!(out, "{}", render_json(&reports)).map_err(io)?;
            writeln!(err, "{summary}").map_err(io)?;
        }
        Format::Text => {
            write!(out, "{}", render_table(&reports)).map_err(io)?;
            writeln!(out, "{summary}").map_err(io)?;
        }
    }
    Ok(if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAILURES
    } else {
        EXIT_OK
    })
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Gen { family, n } => cmd_gen(&family, &n, out),
        Command::Verify {
            corpus,
            families,
            identity,
            max_index,
            format,
            jobs,
        } => cmd_verify(
            corpus,
            &families,
            identity.as_deref(),
            max_index.as_deref(),
            format,
            jobs.as_deref(),
            out,
            err,
        ),
        Command::BinetCheck { family, max_n } => cmd_binet_check(&family, &max_n, out),
        Command::Families { format } => cmd_families(format, out),
        Command::Eval { family, n, x } => cmd_eval(&family, &n, &x, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "gfpkit: {msg}");
            code
        }
    }
}
