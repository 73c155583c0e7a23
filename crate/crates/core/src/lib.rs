//! Exact construction, verification, classification and census of absolutely
//! flat idempotents: real `n x n` matrices `A` with `A^2 = A` and every entry
//! equal to `+-1/k`.
//!
//! Everything works on the scaled sign matrix `B = kA`, which satisfies
//! `B^2 = kB`. No floating point is used anywhere.
//!
//! ```
//! use afi::{block_construction, exact_rank, is_flat_idempotent};
//!
//! let b = block_construction(8, 2, 3).unwrap();
//! assert!(is_flat_idempotent(&b, 2));
//! assert_eq!(exact_rank(&b).unwrap(), 3);
//! ```

pub mod canonical;
pub mod census;
pub mod cli;
pub mod construct;
pub mod equivalence;
pub mod error;
pub mod feasibility;
pub mod fixtures;
pub mod matrix;
pub mod verify;

pub use canonical::{
    canonical_hash, canonical_rep, canonical_rep_similarity, col_types, normalize, row_types,
    to_standard_form, StandardForm, TypeClass, TypePartition, CANONICAL_MAX_DIM,
};
pub use census::{
    census_general, census_general_with, census_partition, census_rank2, census_rank2_with,
    read_records, summarize, write_records, CensusOptions, CensusRecord, WorkItem,
};
pub use construct::{
    block_construction, construct, enumerate_rank2_params, pm_blocks, rank1_canonical,
    rank2_standard, BlockCounts, Method, Rank2Params,
};
pub use equivalence::{are_equivalent, are_equivalent_with, swap_x, swap_y, Equivalence};
pub use error::{Error, Result};
pub use feasibility::{
    check_triple, feasible_triples, rank2_bounds, CountBounds, FeasibilityVerdict, Reason, Triple,
};
pub use matrix::{IntMatrix, MatrixFile, SignMatrix, SignedPermutation, DEFAULT_MAX_DIM};
pub use verify::{exact_rank, full_report, is_flat_idempotent, VerifyReport};
