//! Verifies the three reference 8x8 matrices and prints their reports.
//!
//!     cargo run --example verify_fixtures

use afi::{col_types, fixtures, full_report, row_types};

pub fn run_example() -> afi::Result<()> {
    for (name, b, k) in [
        ("B1", fixtures::b1(), 2),
        ("B2", fixtures::b2(), 2),
        ("B3", fixtures::b3(), 2),
    ] {
        let rep = full_report(&b, k)?;
        println!("{name}:\n{b}");
        println!(
            "  idempotent={} rank={} trace={} triple={}",
            rep.is_idempotent,
            rep.rank,
            rep.trace,
            rep.inferred_triple.map_or("-".into(), |t| t.to_string())
        );
        println!(
            "  row multiplicity {:?}, column multiplicity {:?}",
            row_types(&b).multiplicity,
            col_types(&b).multiplicity
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> afi::Result<()> {
    run_example()
}
