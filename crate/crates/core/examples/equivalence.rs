//! Equivalence tests, with and without transposition, and the x/y swaps
//! that relate different standard forms of one matrix.
//!
//!     cargo run --example equivalence

use afi::{
    are_equivalent, are_equivalent_with, fixtures, swap_x, swap_y, to_standard_form, Equivalence,
};

pub fn run_example() -> afi::Result<()> {
    let (b1, b2) = (fixtures::b1(), fixtures::b2());
    println!("B1 ~ B2: {}", are_equivalent(&b1, &b2)?);

    let t = b2.transpose();
    println!("B2 ~ B2^T with transposition: {}", are_equivalent(&b2, &t)?);
    println!(
        "B2 ~ B2^T by similarity only: {}",
        are_equivalent_with(&b2, &t, Equivalence::SimilarityOnly)?
    );

    let f = to_standard_form(&b1, 2)?;
    let sx = swap_x(&f)?;
    let sy = swap_y(&f)?;
    println!("B1 standard form (x,y) = ({},{})", f.x, f.y);
    println!("  swap_x -> ({},{})", sx.x, sx.y);
    println!("  swap_y -> ({},{})", sy.x, sy.y);
    assert!(are_equivalent(&sx.matrix, &b1)? && are_equivalent(&sy.matrix, &b1)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> afi::Result<()> {
    run_example()
}
