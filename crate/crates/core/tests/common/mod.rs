//! Mutation helpers shared by the integration tests.

#![allow(dead_code)]

use gfpkit::identity::Expr;

/// One variant per additive term of `e`, with that term doubled.
pub fn doubled_terms(e: &Expr) -> Vec<Expr> {
    let two = |x: &Expr| Expr::Mul(Box::new(Expr::int(2)), Box::new(x.clone()));
    match e {
        Expr::Add(l, r) | Expr::Sub(l, r) => {
            let rebuild = |l: Expr, r: Expr| match e {
                Expr::Add(..) => Expr::Add(Box::new(l), Box::new(r)),
                _ => Expr::Sub(Box::new(l), Box::new(r)),
            };
            let mut out: Vec<Expr> = doubled_terms(l)
                .into_iter()
                .map(|m| rebuild(m, (**r).clone()))
                .collect();
            out.extend(
                doubled_terms(r)
                    .into_iter()
                    .map(|m| rebuild((**l).clone(), m)),
            );
            out
        }
        Expr::Neg(x) => doubled_terms(x)
            .into_iter()
            .map(|m| Expr::Neg(Box::new(m)))
            .collect(),
        other => vec![two(other)],
    }
}

/// One variant per integer literal on the `lhs`/`rhs` lines, bumped by one,
/// flagged as a coefficient unless it sits in a subscript or an exponent.
pub fn bumped_literals(text: &str) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        if !(line.starts_with("lhs ") || line.starts_with("rhs ")) {
            continue;
        }
        let bytes = line.as_bytes();
        let mut depth = 0i32;
        // one entry per open paren: whether it opens an exponent
        let mut parens: Vec<bool> = Vec::new();
        let after_caret = |i: usize| line[..i].trim_end_matches(['-', ' ']).ends_with('^');
        let mut i = 4;
        while i < bytes.len() {
            match bytes[i] {
                b'[' => depth += 1,
                b']' => depth -= 1,
                b'(' => parens.push(after_caret(i)),
                b')' => {
                    parens.pop();
                }
                c if c.is_ascii_digit() => {
                    let j = (i..bytes.len())
                        .find(|&j| !bytes[j].is_ascii_digit())
                        .unwrap_or(bytes.len());
                    let k: u64 = line[i..j].parse().unwrap();
                    let in_exponent = after_caret(i) || parens.contains(&true);
                    let mutated = format!("{}{}{}", &line[..i], k + 1, &line[j..]);
                    let lines: Vec<&str> = text
                        .lines()
                        .enumerate()
                        .map(|(n, l)| if n == li { &mutated[..] } else { l })
                        .collect();
                    out.push((lines.join("\n"), depth == 0 && !in_exponent));
                    i = j;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
    }
    out
}
