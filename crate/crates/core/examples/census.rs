//! Full census for small n, the rank 2 census against its bounds, and a
//! partitioned run merged by hand.
//!
//!     cargo run --release --example census

use afi::census::merge;
use afi::{census_general, census_partition, census_rank2, rank2_bounds, summarize};

pub fn run_example() -> afi::Result<()> {
    for row in summarize(&census_general(6, 2)?) {
        println!(
            "({},{},{}): {} classes, {} normalized matrices",
            row.n, row.k, row.r, row.classes, row.raw_count
        );
    }

    for (n, k) in [(8, 2), (10, 2), (12, 2), (12, 4)] {
        let recs = census_rank2(n, k)?;
        let b = rank2_bounds(n, k)?;
        println!(
            "rank 2 ({n},{k}): {} classes, bounds [{}, {}]",
            recs.len(),
            b.lower,
            b.upper
        );
    }

    // Work items can run anywhere; merging their results is order independent.
    let items = census_partition(6, 2)?;
    let parts: Vec<_> = items.iter().rev().map(|w| w.run()).collect();
    let merged = merge(6, 2, parts)?;
    assert_eq!(merged, census_general(6, 2)?);
    println!(
        "{} work items merged to {} records",
        items.len(),
        merged.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> afi::Result<()> {
    run_example()
}
