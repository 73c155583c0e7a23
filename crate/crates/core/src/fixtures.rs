//! Three known `(8, 2, r)` idempotents, stored at scale `k = 2`.
//!
//! `b1` and `b2` are rank 2 with different column multiplicities, so they are
//! not equivalent. `b3` is rank 3 with four row types, more than the block
//! construction ever produces.

use crate::matrix::SignMatrix;

const B1: [&str; 8] = [
    "+++++---", "++---+++", "+++++---", "+++++---", "+++++---", "+++++---", "+++++---", "++---+++",
];

const B2: [&str; 8] = [
    "+++-++--", "+++---++", "+++---++", "+++---++", "+++-++--", "+++---++", "+++---++", "+++---++",
];

const B3: [&str; 8] = [
    "+++++---", "+++++---", "+++++---", "+++++---", "++--+++-", "++-+++--", "+++-+-+-", "+++++---",
];

/// `(8, 2, 2)`, row multiplicity `{6, 2}`, column multiplicity `{6, 2}`.
pub fn b1() -> SignMatrix {
    SignMatrix::from_row_strings(&B1).expect("fixture is well formed")
}

/// `(8, 2, 2)`, row multiplicity `{6, 2}`, column multiplicity `{4, 4}`.
pub fn b2() -> SignMatrix {
    SignMatrix::from_row_strings(&B2).expect("fixture is well formed")
}

/// `(8, 2, 3)` with four row types.
pub fn b3() -> SignMatrix {
    SignMatrix::from_row_strings(&B3).expect("fixture is well formed")
}
