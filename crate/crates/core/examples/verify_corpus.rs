//! Verifies the bundled corpus on all pairs and prints the table and summary.
//!
//! Usage: `verify_corpus [grid_bound] [jobs]`

use std::path::Path;

use gfpkit::gfp::pairs;
use gfpkit::identity::{load_corpus, render_table, verify_corpus, Status, Summary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let grid: i64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(8);
    let jobs: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4);

    let corpus = load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"))?;
    let reports = verify_corpus(&corpus, pairs(), grid, jobs);
    print!("{}", render_table(&reports));
    println!("{}", Summary::of(&reports));

    // failures recorded in the corpus itself versus anything unexpected
    let unexpected: Vec<_> = reports
        .iter()
        .filter(|r| r.status == Status::Fail)
        .filter(|r| {
            !corpus
                .iter()
                .any(|d| d.id == r.id && d.known_failures.contains(&r.pair))
        })
        .collect();
    println!("unexpected failures: {}", unexpected.len());
    Ok(())
}
