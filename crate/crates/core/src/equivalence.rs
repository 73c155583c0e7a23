//! Equivalence of flat idempotents under signed-permutation similarity and
//! (optionally) transposition, plus the two standard-form swaps that
//! replace `x` by `n - x` or `y` by `n - y`.

use serde::{Deserialize, Serialize};

use crate::canonical::{
    canonical_rep, canonical_rep_similarity, col_types, row_types, StandardForm,
};
use crate::construct::{BlockCounts, Rank2Params};
use crate::error::{Error, Result};
use crate::matrix::{SignMatrix, SignedPermutation};
use crate::verify::exact_rank;

/// Which group decides equivalence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equivalence {
    /// Signed-permutation similarity and transposition.
    #[default]
    WithTranspose,
    /// Signed-permutation similarity only.
    SimilarityOnly,
}

/// Cheap orbit invariants, compared before the canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Invariants {
    rank: usize,
    trace: i64,
    rows: (usize, Vec<usize>),
    cols: (usize, Vec<usize>),
}

impl Invariants {
    fn of(m: &SignMatrix) -> Result<Self> {
        let r = row_types(m);
        let c = col_types(m);
        Ok(Invariants {
            rank: exact_rank(m)?,
            trace: m.trace(),
            rows: (r.type_count(), r.multiplicity),
            cols: (c.type_count(), c.multiplicity),
        })
    }

    fn compatible(&self, other: &Invariants, mode: Equivalence) -> bool {
        if self.rank != other.rank || self.trace != other.trace {
            return false;
        }
        let counts = |i: &Invariants| (i.rows.0, i.cols.0);
        let mults = |i: &Invariants| (i.rows.1.clone(), i.cols.1.clone());
        match mode {
            Equivalence::SimilarityOnly => {
                counts(self) == counts(other) && mults(self) == mults(other)
            }
            Equivalence::WithTranspose => {
                let unordered = |i: &Invariants| {
                    let (a, b) = (i.rows.clone(), i.cols.clone());
                    if a <= b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                };
                unordered(self) == unordered(other)
            }
        }
    }
}

/// True iff the matrices lie in one orbit, transposition included.
pub fn are_equivalent(a: &SignMatrix, b: &SignMatrix) -> Result<bool> {
    are_equivalent_with(a, b, Equivalence::WithTranspose)
}

pub fn are_equivalent_with(a: &SignMatrix, b: &SignMatrix, mode: Equivalence) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if !Invariants::of(a)?.compatible(&Invariants::of(b)?, mode) {
        return Ok(false);
    }
    Ok(match mode {
        Equivalence::WithTranspose => canonical_rep(a)? == canonical_rep(b)?,
        Equivalence::SimilarityOnly => canonical_rep_similarity(a)? == canonical_rep_similarity(b)?,
    })
}

// Index groups of a standard form, in layout order: (block, sign of v).
const A_P: usize = 0;
const A_M: usize = 1;
const B_P: usize = 2;
const B_M: usize = 3;
const V_P: usize = 4;
const V_M: usize = 5;
const W_P: usize = 6;
const W_M: usize = 7;

fn group_sizes(p: &Rank2Params) -> [usize; 8] {
    [p.a_p, p.a_m, p.b_p, p.b_m, p.c1p, p.c1m, p.c2p, p.c2m]
}

fn validate(f: &StandardForm) -> Result<()> {
    let p = Rank2Params::from_counts(f.params.n, f.params.k, f.params.counts())?;
    if p != f.params || p.matrix() != f.matrix || f.x != p.x() || f.y != p.y() {
        return Err(Error::InvalidParameter(
            "matrix does not match its standard-form parameters".into(),
        ));
    }
    Ok(())
}

/// Rearranges the eight index groups of `f` into the order `new_order`
/// (old group ids), optionally after the signature `diag(v)`.
fn regroup(f: &StandardForm, new_order: [usize; 8], signature: bool) -> Result<StandardForm> {
    validate(f)?;
    let p = &f.params;
    let n = p.n;
    let sizes = group_sizes(p);
    let mut starts = [0usize; 8];
    for g in 1..8 {
        starts[g] = starts[g - 1] + sizes[g - 1];
    }
    let v = p.v_column();

    let mut perm = vec![0usize; n];
    let mut signs = vec![1i8; n];
    let mut pos = 0;
    for &g in &new_order {
        for old in starts[g]..starts[g] + sizes[g] {
            perm[old] = pos;
            if signature {
                signs[pos] = v[old];
            }
            pos += 1;
        }
    }
    let g = SignedPermutation::new(perm, signs)?;
    let matrix = f.matrix.apply_similarity(&g)?;

    let s = |i: usize| sizes[new_order[i]];
    let counts = BlockCounts {
        a_p: s(0),
        a_m: s(1),
        b_p: s(2),
        b_m: s(3),
        c1p: s(4),
        c1m: s(5),
        c2p: s(6),
        c2m: s(7),
    };
    let params = Rank2Params::from_counts(n, p.k, counts)?;
    if params.matrix() != matrix {
        return Err(Error::InvalidParameter(
            "regrouped matrix is not in standard form".into(),
        ));
    }
    let transform = if f.transform.len() == n {
        g.compose(&f.transform)?
    } else {
        g
    };
    Ok(StandardForm::from_params(params, transform))
}

/// Equivalent standard form with `x -> n - x`, `y` unchanged.
///
/// Exchanges the `v` and `-v` column blocks (and the matching rows), so the
/// new `v` is the old `-v`.
pub fn swap_x(f: &StandardForm) -> Result<StandardForm> {
    regroup(f, [A_M, A_P, B_M, B_P, W_M, W_P, V_M, V_P], false)
}

/// Equivalent standard form with `y -> n - y`, `x` unchanged.
///
/// The signature `diag(v)` turns the `v`/`-v` columns constant and the
/// constant columns into copies of `+-v`; regrouping restores the layout.
pub fn swap_y(f: &StandardForm) -> Result<StandardForm> {
    // c1p = k/2 + q >= 1, so a `v = +` index of the old V block becomes the
    // new root and the orientation of `v` is kept: x is unchanged.
    regroup(f, [V_P, W_M, W_P, V_M, A_P, B_M, B_P, A_M], true)
}
