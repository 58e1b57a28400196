//! The worked examples for (a-b)^2 G'_n = alpha (G*_{n+1} + g G*_{n-1}):
//! on Chebyshev polynomials it reads (4x^2 - 4) U_n = 2 (T_{n+1} - T_{n-1}),
//! on Jacobsthal polynomials (1 + 8x) J_n = j_{n+1} + 2x j_{n-1}.

use gfpkit::gfp::pair;
use gfpkit::identity::{
    eval_expr, instantiate, parse_identity, verify_identity, with_alpha, Assignment, Evaluator, Var,
};

const I1: &str = "\
identity I1
vars n
constraints n>=1
lhs Delta*Gp[n]
rhs alpha*(Gs[n+1] + g*Gs[n-1])
";

fn main() {
    let def = parse_identity(I1).expect("valid identity");
    for name in ["chebyshev-first", "jacobsthal"] {
        let pair = pair(name).expect("registered pair");
        let mut ev = Evaluator::new(pair);
        println!(
            "{} (alpha = {}, delta = {})",
            pair.name(),
            pair.alpha(),
            pair.delta()
        );
        for n in 1..=4 {
            let inst = instantiate(&def, &with_alpha(Assignment::new().with(Var::N, n), pair))
                .expect("n >= 1");
            let lhs = eval_expr(&inst.lhs, &mut ev).expect("evaluates");
            let rhs = eval_expr(&inst.rhs, &mut ev).expect("evaluates");
            println!(
                "  n = {n}: {lhs}  {}  {rhs}",
                if lhs == rhs { "==" } else { "!=" }
            );
        }
        let report = verify_identity(&def, pair, 16);
        println!(
            "  1 <= n <= 16: {} ({} tuples)",
            report.status, report.tuples_checked
        );
    }
}
