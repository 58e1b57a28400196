//! Closed form against recurrence for every family, plus the effect of a
//! wrong normalization constant.

use gfpkit::gfp::{binet_term, check_family, family, registry};

fn main() {
    for f in registry() {
        let report = check_family(f, 32);
        println!(
            "{:<18} {}",
            f.name,
            if report.passed() { "ok" } else { "FAILED" }
        );
    }

    let q = family("pell-lucas-prime").expect("registered");
    println!(
        "\n{} with alpha = {}: Q'_3 = {}",
        q.name,
        q.alpha,
        binet_term(q, 3).expect("closed form")
    );
    let mut wrong = q.clone();
    wrong.alpha = 1;
    let report = check_family(&wrong, 8);
    println!("with alpha = 1:");
    for c in report.failures() {
        println!("  {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
    }
}
