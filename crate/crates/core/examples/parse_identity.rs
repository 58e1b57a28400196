//! Parsing an identity, printing it back, and what a parse error looks like.

use gfpkit::identity::parse_identity;

const CATALAN: &str = "\
identity P2.2
vars n m
constraints n>=m
lhs (Gp[n])^2 - (neg_g)^(n-m)*(Gp[m])^2
rhs Gp[n+m]*Gp[n-m]
";

fn main() {
    let def = parse_identity(CATALAN).expect("valid identity");
    println!("vars: {:?}", def.vars);
    for c in &def.constraints {
        println!("constraint: {c}");
    }
    println!("printed back:\n{def}");
    assert_eq!(parse_identity(&def.to_string()).expect("reparses"), def);

    for bad in [
        "identity X\nvars n\nlhs Gp[n\nrhs 0",
        "identity X\nvars n\nlhs Gp[m]\nrhs 0",
        "identity X\nlhs Hq\nrhs 0",
    ] {
        println!("error: {}", parse_identity(bad).unwrap_err());
    }
}
