//! The three constructions: rank 1, the P/M block construction for any
//! feasible rank, and the rank 2 parameter family.
//!
//!     cargo run --example constructions

use afi::{
    block_construction, enumerate_rank2_params, exact_rank, is_flat_idempotent, pm_blocks,
    rank1_canonical, rank2_standard, MatrixFile,
};

pub fn run_example() -> afi::Result<()> {
    let j = rank1_canonical(5, 3)?;
    println!("rank 1, (5,3,1):\n{}", MatrixFile::new(3, j));

    let (p, m) = pm_blocks(4)?;
    println!("P for k=4:\n{p}M for k=4:\n{m}");

    let b = block_construction(12, 4, 2)?;
    assert!(is_flat_idempotent(&b, 4));
    println!("block (12,4,2), rank {}:\n{b}", exact_rank(&b)?);

    let params = enumerate_rank2_params(10, 2)?;
    println!("{} rank 2 parameter sets (t,q,l) for (10,2)", params.len());
    for (t, q, l) in params {
        let (p, m) = rank2_standard(10, 2, t, q, l)?;
        assert!(is_flat_idempotent(&m, 2));
        println!(
            "  t={t} q={q} l={l}  x={} y={}  a={} b={} c={}",
            p.x(),
            p.y(),
            p.a,
            p.b,
            p.c
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> afi::Result<()> {
    run_example()
}
