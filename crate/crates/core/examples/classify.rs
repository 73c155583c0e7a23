//! Reduces a scrambled rank 2 matrix to standard form, then computes its
//! canonical representative.
//!
//!     cargo run --example classify

use afi::{canonical_hash, canonical_rep, rank2_standard, to_standard_form, SignedPermutation};

pub fn run_example() -> afi::Result<()> {
    let (params, m) = rank2_standard(12, 2, 1, 0, 0)?;
    // Scramble with a fixed signed permutation.
    let perm = vec![5, 11, 0, 7, 2, 9, 3, 10, 1, 6, 8, 4];
    let signs = vec![1, -1, -1, 1, 1, -1, 1, 1, -1, 1, -1, 1];
    let g = SignedPermutation::new(perm, signs)?;
    let scrambled = m.apply_similarity(&g)?;
    println!("scrambled:\n{scrambled}");

    let f = to_standard_form(&scrambled, 2)?;
    println!(
        "standard form: x={} y={} (t,q,l)=({},{},{}), built from (t,q,l)=({},{},{})",
        f.x, f.y, f.params.t, f.params.q, f.params.l, params.t, params.q, params.l
    );
    assert_eq!(scrambled.apply_similarity(&f.transform)?, f.matrix);

    let c = canonical_rep(&scrambled)?;
    assert_eq!(c, canonical_rep(&m)?);
    println!("canonical:\n{c}hash {}", canonical_hash(&c)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> afi::Result<()> {
    run_example()
}
