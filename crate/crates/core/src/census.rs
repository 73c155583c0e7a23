//! Exhaustive enumeration of flat idempotents modulo equivalence.
//!
//! Every class has a normalized representative: column 0 all positive and
//! `u = (n - k)/2` negatives in every row. [`census_general`] searches those
//! matrices row by row; [`census_rank2`] exploits that a normalized rank 2
//! idempotent has exactly two distinct rows. Raw counts are numbers of
//! distinct normalized matrices per class; classes are keyed by
//! [`canonical_rep`].

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_rep, col_types, row_types, to_standard_form};
use crate::construct::Rank2Params;
use crate::error::{Error, Result};
use crate::feasibility::Triple;
use crate::matrix::SignMatrix;
use crate::verify::{exact_rank, is_flat_idempotent};

/// Default dimension cap for [`census_general`].
pub const GENERAL_CAP: usize = 6;
/// Default dimension cap for [`census_rank2`].
pub const RANK2_CAP: usize = 12;

/// One equivalence class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub triple: Triple,
    pub canonical: SignMatrix,
    pub row_mult: Vec<usize>,
    pub col_mult: Vec<usize>,
    pub standard_params: Option<Rank2Params>,
    /// Distinct normalized matrices in this class.
    pub raw_count: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    /// Worker threads; `0` and `1` both mean sequential.
    pub jobs: usize,
    /// Overrides [`GENERAL_CAP`] / [`RANK2_CAP`].
    pub cap: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { jobs: 1, cap: None }
    }
}

fn run_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Rows `(+, ...)` with exactly `u` negatives among the last `n - 1` entries,
/// in lexicographic order of the negative positions.
fn candidate_rows(n: usize, u: usize) -> Vec<Vec<i8>> {
    fn rec(n: usize, start: usize, left: usize, row: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if left == 0 {
            out.push(row.clone());
            return;
        }
        for pos in start..=n - left {
            row[pos] = -1;
            rec(n, pos + 1, left - 1, row, out);
            row[pos] = 1;
        }
    }
    let mut out = Vec::new();
    if u < n {
        let mut row = vec![1i8; n];
        rec(n, 1, u, &mut row, &mut out);
    }
    out
}

fn check_general(n: usize, k: usize, opts: &CensusOptions) -> Result<usize> {
    let cap = opts.cap.unwrap_or(GENERAL_CAP);
    if n > cap {
        return Err(Error::DimensionCap { n, cap });
    }
    if n == 0 || k == 0 || k > n || (n - k) % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "census needs 1 <= k <= n with n - k even, got (n, k) = ({n}, {k})"
        )));
    }
    Ok((n - k) / 2)
}

/// An independent slice of the general search: all normalized matrices whose
/// leading rows equal `prefix`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkItem {
    pub n: usize,
    pub k: usize,
    pub prefix: Vec<Vec<i8>>,
}

/// Classes found by one work item: canonical representative to raw count.
pub type ClassCounts = BTreeMap<SignMatrix, u64>;

/// Splits the general search on the value of row 0.
pub fn census_partition(n: usize, k: usize) -> Result<Vec<WorkItem>> {
    census_partition_with(n, k, &CensusOptions::default())
}

pub fn census_partition_with(n: usize, k: usize, opts: &CensusOptions) -> Result<Vec<WorkItem>> {
    let u = check_general(n, k, opts)?;
    Ok(candidate_rows(n, u)
        .into_iter()
        .map(|row| WorkItem {
            n,
            k,
            prefix: vec![row],
        })
        .collect())
}

/// Depth-first search state. `partial[a][j]` holds the contribution of the
/// placed rows to `(B^2)[a][j]`; the unplaced rows can shift it by at most
/// their number, with matching parity.
struct Search<'a> {
    n: usize,
    k: i32,
    candidates: &'a [Vec<i8>],
    rows: Vec<Vec<i8>>,
    partial: Vec<Vec<i32>>,
    found: ClassCounts,
}

impl Search<'_> {
    fn place(&mut self, row: &[i8]) -> bool {
        let i = self.rows.len();
        let n = self.n;
        let saved = self.partial.clone();
        for a in 0..i {
            let bai = self.rows[a][i] as i32;
            for j in 0..n {
                self.partial[a][j] += bai * row[j] as i32;
            }
        }
        self.rows.push(row.to_vec());
        let mut own = vec![0i32; n];
        for (l, &bil) in row.iter().enumerate().take(i + 1) {
            let src = &self.rows[l];
            for j in 0..n {
                own[j] += bil as i32 * src[j] as i32;
            }
        }
        self.partial[i] = own;

        let remaining = (n - 1 - i) as i32;
        let ok = (0..=i).all(|a| {
            (0..n).all(|j| {
                let diff = self.k * self.rows[a][j] as i32 - self.partial[a][j];
                diff.abs() <= remaining && (diff - remaining) % 2 == 0
            })
        });
        if !ok {
            self.rows.pop();
            self.partial = saved;
        }
        ok
    }

    fn unplace(&mut self) {
        let i = self.rows.len() - 1;
        let row = self.rows.pop().expect("a placed row");
        for a in 0..i {
            let bai = self.rows[a][i] as i32;
            for j in 0..self.n {
                self.partial[a][j] -= bai * row[j] as i32;
            }
        }
        self.partial[i].iter_mut().for_each(|x| *x = 0);
    }

    fn descend(&mut self) {
        if self.rows.len() == self.n {
            let b = SignMatrix::from_rows(&self.rows).expect("rows are +-1");
            debug_assert!(is_flat_idempotent(&b, self.k as usize));
            let rep = canonical_rep(&b).expect("census dimension is within the canonical cap");
            *self.found.entry(rep).or_insert(0) += 1;
            return;
        }
        for idx in 0..self.candidates.len() {
            let cand = &self.candidates[idx];
            if self.place(cand) {
                self.descend();
                self.unplace();
            }
        }
    }
}

impl WorkItem {
    pub fn run(&self) -> ClassCounts {
        let u = (self.n - self.k) / 2;
        let candidates = candidate_rows(self.n, u);
        let mut s = Search {
            n: self.n,
            k: self.k as i32,
            candidates: &candidates,
            rows: Vec::new(),
            partial: vec![vec![0; self.n]; self.n],
            found: ClassCounts::new(),
        };
        for row in &self.prefix {
            if row.len() != self.n || !s.place(row) {
                return ClassCounts::new();
            }
        }
        s.descend();
        s.found
    }
}

/// Deterministic union of per-item class counts into sorted records.
pub fn merge(
    n: usize,
    k: usize,
    parts: impl IntoIterator<Item = ClassCounts>,
) -> Result<Vec<CensusRecord>> {
    let mut all = ClassCounts::new();
    for part in parts {
        for (rep, count) in part {
            *all.entry(rep).or_insert(0) += count;
        }
    }
    let mut records = all
        .into_iter()
        .map(|(rep, count)| make_record(n, k, rep, count, None))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| (a.triple.r, &a.canonical).cmp(&(b.triple.r, &b.canonical)));
    Ok(records)
}

fn make_record(
    n: usize,
    k: usize,
    canonical: SignMatrix,
    raw_count: u64,
    rank_hint: Option<usize>,
) -> Result<CensusRecord> {
    if !is_flat_idempotent(&canonical, k) {
        return Err(Error::NotIdempotent { k });
    }
    let r = match rank_hint {
        Some(r) => r,
        None => exact_rank(&canonical)?,
    };
    let triple = Triple::new(n, k, r)?;
    let standard_params = if r == 2 {
        Some(to_standard_form(&canonical, k)?.params)
    } else {
        None
    };
    Ok(CensusRecord {
        triple,
        row_mult: row_types(&canonical).multiplicity,
        col_mult: col_types(&canonical).multiplicity,
        canonical,
        standard_params,
        raw_count,
    })
}

/// All classes of `n x n` flat idempotents at scale `k`, ordered by rank
/// then canonical representative.
pub fn census_general(n: usize, k: usize) -> Result<Vec<CensusRecord>> {
    census_general_with(n, k, &CensusOptions::default())
}

pub fn census_general_with(n: usize, k: usize, opts: &CensusOptions) -> Result<Vec<CensusRecord>> {
    let items = census_partition_with(n, k, opts)?;
    let parts = run_pool(opts.jobs, || {
        items.par_iter().map(WorkItem::run).collect::<Vec<_>>()
    })?;
    merge(n, k, parts)
}

// Rank 2 search.
//
// A normalized rank 2 idempotent has two distinct rows r1, r2 and a set S of
// rows equal to r1. Each index i carries the label (r1[i], r2[i], i in S);
// permutation similarity only permutes labels, so the matrices up to
// permutation are the label count vectors. Idempotence is linear in them:
// r1 . 1 = r2 . 1 = k, r1 . S = k, r2 . S = 0. Swapping (r1, S) with
// (r2, complement S) gives the same matrix.

const LABELS: usize = 8;

fn label_signs(label: usize) -> (i64, i64, bool) {
    let sign = |bit: usize| if label & bit == 0 { 1 } else { -1 };
    (sign(1), sign(2), label & 4 != 0)
}

fn swap_label(label: usize) -> usize {
    ((label & 1) << 1) | ((label & 2) >> 1) | ((label & 4) ^ 4)
}

/// Labels with `r1 = r2 = +`; index 0 must carry one of them.
const ROOT_LABELS: [usize; 2] = [0, 4];

fn compositions(n: usize, parts: usize) -> Vec<[usize; LABELS]> {
    fn rec(
        left: usize,
        at: usize,
        parts: usize,
        cur: &mut [usize; LABELS],
        out: &mut Vec<[usize; LABELS]>,
    ) {
        if at == parts - 1 {
            cur[at] = left;
            out.push(*cur);
            return;
        }
        for x in 0..=left {
            cur[at] = x;
            rec(left - x, at + 1, parts, cur, out);
        }
        cur[at] = 0;
    }
    let mut out = Vec::new();
    rec(n, 0, parts, &mut [0; LABELS], &mut out);
    out
}

fn satisfies_rank2(c: &[usize; LABELS], k: i64) -> bool {
    let (mut row1, mut row2, mut s1, mut s2) = (0i64, 0i64, 0i64, 0i64);
    for (label, &count) in c.iter().enumerate() {
        let (p1, p2, in_s) = label_signs(label);
        let count = count as i64;
        row1 += p1 * count;
        row2 += p2 * count;
        if in_s {
            s1 += p1 * count;
            s2 += p2 * count;
        }
    }
    row1 == k && row2 == k && s1 == k && s2 == 0 && ROOT_LABELS.iter().any(|&r| c[r] > 0)
}

fn multinomial(counts: &[usize]) -> u128 {
    let mut total: u128 = 1;
    let mut seen: u128 = 0;
    for &c in counts {
        for i in 1..=c as u128 {
            seen += 1;
            // C(seen, i) accumulated exactly.
            total = total * seen / i;
        }
    }
    total
}

/// Normalized labelled matrices with label counts `c`, index 0 fixed to a
/// root label.
fn labelled_count(c: &[usize; LABELS]) -> u128 {
    ROOT_LABELS
        .iter()
        .filter(|&&r| c[r] > 0)
        .map(|&r| {
            let mut rest = *c;
            rest[r] -= 1;
            multinomial(&rest)
        })
        .sum()
}

fn rank2_matrix(n: usize, c: &[usize; LABELS]) -> SignMatrix {
    let root = if c[4] > 0 { 4 } else { 0 };
    let mut labels = vec![root];
    for (label, &count) in c.iter().enumerate() {
        let count = if label == root { count - 1 } else { count };
        labels.extend(std::iter::repeat_n(label, count));
    }
    let mut entries = Vec::with_capacity(n * n);
    for &li in &labels {
        let (_, _, in_s) = label_signs(li);
        for &lj in &labels {
            let (p1, p2, _) = label_signs(lj);
            entries.push(if in_s { p1 } else { p2 } as i8);
        }
    }
    SignMatrix::from_raw(n, entries)
}

/// All classes of rank 2 `(n, k, 2)` idempotents.
pub fn census_rank2(n: usize, k: usize) -> Result<Vec<CensusRecord>> {
    census_rank2_with(n, k, &CensusOptions::default())
}

pub fn census_rank2_with(n: usize, k: usize, opts: &CensusOptions) -> Result<Vec<CensusRecord>> {
    let cap = opts.cap.unwrap_or(RANK2_CAP);
    if n > cap {
        return Err(Error::DimensionCap { n, cap });
    }
    Triple::existing(n, k, 2)?;

    let shapes: Vec<([usize; LABELS], u64)> = compositions(n, LABELS)
        .into_iter()
        .filter(|c| satisfies_rank2(c, k as i64))
        .filter_map(|c| {
            let mut swapped = [0; LABELS];
            for (label, &count) in c.iter().enumerate() {
                swapped[swap_label(label)] = count;
            }
            let labelled = labelled_count(&c);
            match c.cmp(&swapped) {
                std::cmp::Ordering::Less => Some((c, labelled)),
                std::cmp::Ordering::Equal => Some((c, labelled / 2)),
                std::cmp::Ordering::Greater => None,
            }
        })
        .map(|(c, raw)| {
            (
                c,
                u64::try_from(raw).expect("raw count fits u64 at census scale"),
            )
        })
        .collect();

    let keyed = run_pool(opts.jobs, || {
        shapes
            .par_iter()
            .map(|(c, raw)| {
                let b = rank2_matrix(n, c);
                debug_assert!(is_flat_idempotent(&b, k));
                canonical_rep(&b).map(|rep| (rep, *raw))
            })
            .collect::<Result<Vec<_>>>()
    })??;

    let mut classes = ClassCounts::new();
    for (rep, raw) in keyed {
        *classes.entry(rep).or_insert(0) += raw;
    }
    classes
        .into_iter()
        .map(|(rep, raw)| make_record(n, k, rep, raw, Some(2)))
        .collect()
}

/// Writes one JSON object per line.
pub fn write_records<W: Write>(mut w: W, records: &[CensusRecord]) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub fn read_records<R: BufRead>(r: R) -> Result<Vec<CensusRecord>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

/// Classes and raw matrices per `(n, k, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub classes: usize,
    pub raw_count: u64,
}

pub fn summarize(records: &[CensusRecord]) -> Vec<SummaryRow> {
    let mut rows: BTreeMap<(usize, usize, usize), (usize, u64)> = BTreeMap::new();
    for rec in records {
        let e = rows
            .entry((rec.triple.n, rec.triple.k, rec.triple.r))
            .or_insert((0, 0));
        e.0 += 1;
        e.1 += rec.raw_count;
    }
    rows.into_iter()
        .map(|((n, k, r), (classes, raw_count))| SummaryRow {
            n,
            k,
            r,
            classes,
            raw_count,
        })
        .collect()
}
