//! The Binet roots a and b of each equivalent pair, as elements of Q(x)[s]
//! with s^2 = d^2 + 4g.

use gfpkit::gfp::{pairs, roots_of};

fn main() {
    for pair in pairs() {
        let (a, b) = roots_of(&pair.fib);
        let sum = a.add(&b).expect("same radicand");
        let prod = a.mul(&b).expect("same radicand");
        println!("{}", pair.name());
        println!("  s^2   = {}", pair.delta());
        println!("  a     = {a}");
        println!("  b     = {b}");
        println!("  a + b = {sum}");
        println!("  a b   = {prod}");
        println!("  N(a)  = {}", a.norm());
        println!("  a^4   = {}", a.pow(4));
    }
}
