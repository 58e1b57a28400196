//! Cassini and Catalan on all six pairs, and a perturbed Cassini that must fail.

use gfpkit::gfp::pairs;
use gfpkit::identity::{parse_identity, verify_identity};

fn main() {
    let cassini = parse_identity(
        "identity P2.1\nvars n\nconstraints n>=1\nlhs Gp[n+1]*Gp[n-1] - Gp[n]^2\nrhs (-1)^n*g^(n-1)",
    )
    .expect("valid");
    let catalan = parse_identity(
        "identity P2.2\nvars n m\nconstraints n>=m\nlhs Gp[n]^2 - neg_g^(n-m)*Gp[m]^2\nrhs Gp[n+m]*Gp[n-m]",
    )
    .expect("valid");
    let broken = parse_identity(
        "identity P2.1-perturbed\nvars n\nconstraints n>=1\nlhs Gp[n+1]*Gp[n-1] - 2*Gp[n]^2\nrhs (-1)^n*g^(n-1)",
    )
    .expect("valid");

    for def in [&cassini, &catalan, &broken] {
        for pair in pairs() {
            let r = verify_identity(def, pair, 10);
            print!(
                "{:<14} {:<34} {:>4} tuples  {}",
                r.id, r.pair, r.tuples_checked, r.status
            );
            match r.counterexample {
                Some(c) => println!("  at {:?}: {} vs {}", c.assignment, c.lhs, c.rhs),
                None => println!(),
            }
        }
    }
}
