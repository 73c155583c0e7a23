//! Which (n, k, r) admit an absolutely flat idempotent, and why the others
//! fail.
//!
//!     cargo run --example feasibility

use afi::{check_triple, feasible_triples, rank2_bounds};

pub fn run_example() -> afi::Result<()> {
    let triples = feasible_triples(10);
    println!("{} feasible triples with n <= 10:", triples.len());
    for t in &triples {
        println!("  {t}  m={} u={}", t.m, t.u);
    }

    // One failure per reason.
    for (n, k, r) in [(4, 1, 1), (4, 2, 3), (5, 1, 2), (7, 1, 3), (6, 2, 2)] {
        let v = check_triple(n, k, r);
        println!("({n},{k},{r}): exists={} reason={}", v.exists, v.reason);
    }

    for (n, k) in [(8, 2), (12, 2), (16, 4)] {
        let b = rank2_bounds(n, k)?;
        println!(
            "rank 2 classes for ({n},{k}): between {} and {}",
            b.lower, b.upper
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> afi::Result<()> {
    run_example()
}
