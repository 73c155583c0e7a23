//! Exact verification: `B^2 = kB`, rank, and the measured row/diagonal
//! identities of a normalized idempotent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::Triple;
use crate::matrix::SignMatrix;

/// True iff `B * B == k * B` exactly. Returns false for `k` outside `1..=n`.
pub fn is_flat_idempotent(b: &SignMatrix, k: usize) -> bool {
    let n = b.n();
    if k == 0 || k > n {
        return false;
    }
    let k = k as i64;
    // Row by row so non-idempotent inputs bail out early.
    let mut acc = vec![0i64; n];
    for i in 0..n {
        acc.iter_mut().for_each(|a| *a = 0);
        for (l, &bil) in b.row(i).iter().enumerate() {
            for (a, &blj) in acc.iter_mut().zip(b.row(l)) {
                *a += (bil * blj) as i64;
            }
        }
        if acc
            .iter()
            .zip(b.row(i))
            .any(|(&a, &bij)| a != k * bij as i64)
        {
            return false;
        }
    }
    true
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Every intermediate entry is a minor of the input, so for `n <= 24` it is
/// bounded by Hadamard's `n^(n/2) < 2^63`. Products are formed in `i128`;
/// a quotient that does not fit `i64` yields [`Error::RankOverflow`].
pub fn exact_rank(m: &SignMatrix) -> Result<usize> {
    let n = m.n();
    let mut a: Vec<Vec<i64>> = m
        .rows()
        .map(|r| r.iter().map(|&e| e as i64).collect())
        .collect();
    bareiss_rank(&mut a, n)
}

pub(crate) fn bareiss_rank(a: &mut [Vec<i64>], cols: usize) -> Result<usize> {
    let rows = a.len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col] as i128;
        for i in rank + 1..rows {
            let factor = a[i][col] as i128;
            for j in col + 1..cols {
                let num = pivot * a[i][j] as i128 - factor * a[rank][j] as i128;
                debug_assert_eq!(num % prev, 0);
                a[i][j] = i64::try_from(num / prev).map_err(|_| Error::RankOverflow)?;
            }
            a[i][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Everything measurable about a candidate `(B, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    pub is_idempotent: bool,
    pub rank: usize,
    /// Trace of `B`, which equals `k * rank` for an idempotent.
    pub trace: i64,
    pub row_negative_counts: Vec<usize>,
    /// Negative diagonal entries (`m`); only measured for idempotents.
    pub diag_negative_count: Option<usize>,
    pub first_column_positive: bool,
    pub inferred_triple: Option<Triple>,
    /// `n = r k + 2m` with measured `m`; present for idempotents.
    pub rank_identity_holds: Option<bool>,
    /// `n - k = 2u` with every row carrying `u` negatives; present for
    /// idempotents whose first column is all positive.
    pub row_identity_holds: Option<bool>,
}

pub fn full_report(b: &SignMatrix, k: usize) -> Result<VerifyReport> {
    let n = b.n();
    let is_idempotent = is_flat_idempotent(b, k);
    let rank = exact_rank(b)?;
    let trace = b.trace();
    let row_negative_counts = b.row_negative_counts();
    let first_column_positive = (0..n).all(|i| b.get(i, 0) > 0);

    let mut report = VerifyReport {
        n,
        k,
        is_idempotent,
        rank,
        trace,
        row_negative_counts,
        diag_negative_count: None,
        first_column_positive,
        inferred_triple: None,
        rank_identity_holds: None,
        row_identity_holds: None,
    };
    if !is_idempotent {
        return Ok(report);
    }

    let m = (0..n).filter(|&i| b.get(i, i) < 0).count();
    report.diag_negative_count = Some(m);
    let ki = k as i64;
    if trace > 0 && trace % ki == 0 {
        let r = (trace / ki) as usize;
        report.inferred_triple = Triple::new(n, k, r).ok();
        report.rank_identity_holds = Some(n == r * k + 2 * m);
    } else {
        report.rank_identity_holds = Some(false);
    }
    if first_column_positive {
        let ok =
            (n - k).is_multiple_of(2) && report.row_negative_counts.iter().all(|&c| 2 * c == n - k);
        report.row_identity_holds = Some(ok);
    }
    Ok(report)
}
