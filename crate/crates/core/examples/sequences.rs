//! First terms of every registered family, generated by the recurrence.

use gfpkit::gfp::registry;
use gfpkit::SequenceCache;

fn main() {
    let n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    for family in registry() {
        let mut cache = SequenceCache::new(family.clone());
        let terms: Vec<String> = cache
            .terms_through(n)
            .expect("n >= 0")
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("{} ({}, {}):", family.name, family.symbol, family.kind);
        for (i, t) in terms.iter().enumerate() {
            println!("  {}_{i} = {t}", family.symbol);
        }
    }
}
