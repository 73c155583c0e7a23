//! Exact ±1 matrices and the signed-permutation group acting on them.
//!
//! A [`SignMatrix`] holds the scaled matrix `B = kA`; the idempotent `A` is
//! only ever implied by the pair `(B, k)`. Entries are `i8`, products are
//! accumulated in `i64`, which is exact for any `n <= 64`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default dimension cap applied by [`SignMatrix::new`].
pub const DEFAULT_MAX_DIM: usize = 32;

/// Hard limit for [`SignMatrix::with_cap`]; `i64` accumulation of `n` products
/// of entries bounded by `n` cannot overflow below this.
pub const MAX_SUPPORTED_DIM: usize = 64;

/// A square matrix with entries in `{+1, -1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct SignMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    /// Builds a matrix from row-major entries, enforcing [`DEFAULT_MAX_DIM`].
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self> {
        Self::with_cap(n, entries, DEFAULT_MAX_DIM)
    }

    /// Like [`SignMatrix::new`] with an explicit dimension cap (at most
    /// [`MAX_SUPPORTED_DIM`]).
    pub fn with_cap(n: usize, entries: Vec<i8>, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let cap = cap.min(MAX_SUPPORTED_DIM);
        if n > cap {
            return Err(Error::DimensionCap { n, cap });
        }
        if entries.len() != n * n {
            return Err(Error::WrongEntryCount {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidEntry {
                row: pos / n,
                col: pos % n,
                value: entries[pos] as i64,
            });
        }
        Ok(SignMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i8) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::new(n, entries)
    }

    pub fn from_rows<R: AsRef<[i8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(n, entries)
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(n, vec![1; n * n])
    }

    /// Trusted constructor for internal callers that produce entries in
    /// `{+1, -1}` by construction.
    pub(crate) fn from_raw(n: usize, entries: Vec<i8>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        debug_assert!(entries.iter().all(|&e| e == 1 || e == -1));
        SignMatrix { n, entries }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.n)
    }

    pub fn column(&self, j: usize) -> Vec<i8> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i) as i64).sum()
    }

    pub fn transpose(&self) -> SignMatrix {
        let n = self.n;
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        SignMatrix { n, entries }
    }

    /// Exact integer product `self * other`.
    pub fn multiply(&self, other: &SignMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            let a = self.row(i);
            let dst = &mut out[i * n..(i + 1) * n];
            for (l, &ail) in a.iter().enumerate() {
                let b = other.row(l);
                for (d, &blj) in dst.iter_mut().zip(b) {
                    *d += (ail * blj) as i64;
                }
            }
        }
        Ok(IntMatrix { n, entries: out })
    }

    /// Conjugation `G M G^-1` by the signed permutation `G = S P`.
    ///
    /// Entry `(i, j)` of `self` lands at `(perm[i], perm[j])` with sign
    /// `signs[perm[i]] * signs[perm[j]]`.
    pub fn apply_similarity(&self, g: &SignedPermutation) -> Result<SignMatrix> {
        if g.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: g.len(),
            });
        }
        let n = self.n;
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            let pi = g.perm[i];
            let si = g.signs[pi];
            for j in 0..n {
                let pj = g.perm[j];
                entries[pi * n + pj] = si * g.signs[pj] * self.entries[i * n + j];
            }
        }
        Ok(SignMatrix { n, entries })
    }

    /// Number of `-1` entries in each row.
    pub fn row_negative_counts(&self) -> Vec<usize> {
        self.rows()
            .map(|r| r.iter().filter(|&&e| e < 0).count())
            .collect()
    }

    /// Rows rendered as `+`/`-` strings.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows()
            .map(|r| r.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect())
            .collect()
    }

    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            let before = entries.len();
            for (j, ch) in row.chars().enumerate() {
                entries.push(match ch {
                    '+' => 1,
                    '-' => -1,
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: format!("unexpected character {ch:?} at column {}", j + 1),
                        })
                    }
                });
            }
            if entries.len() - before != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: entries.len() - before,
                });
            }
        }
        Self::with_cap(n, entries, MAX_SUPPORTED_DIM)
    }
}

impl TryFrom<Vec<String>> for SignMatrix {
    type Error = Error;

    fn try_from(rows: Vec<String>) -> Result<Self> {
        SignMatrix::from_row_strings(&rows)
    }
}

impl From<SignMatrix> for Vec<String> {
    fn from(m: SignMatrix) -> Self {
        m.row_strings()
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix({}x{})", self.n, self.n)?;
        for r in self.row_strings() {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SignMatrix {
    /// Rows of space-separated `+`/`-` tokens, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<&str> = row.iter().map(|&e| if e > 0 { "+" } else { "-" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A dense exact integer matrix, the result of [`SignMatrix::multiply`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// True iff `self == scale * m` entrywise.
    pub fn equals_scaled(&self, m: &SignMatrix, scale: i64) -> bool {
        self.n == m.n()
            && self
                .entries
                .iter()
                .zip(m.entries())
                .all(|(&a, &b)| a == scale * b as i64)
    }
}

/// An element `S P` of the hyperoctahedral group: a permutation together with
/// a signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "{} signs for a permutation of {} points",
                signs.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation(format!(
                    "{perm:?} is not a bijection"
                )));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidPermutation("signs must be +1 or -1".into()));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn from_permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, vec![1; n])
    }

    pub fn from_signature(signs: Vec<i8>) -> Result<Self> {
        let n = signs.len();
        Self::new((0..n).collect(), signs)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// The product `self * other`: acting by the result equals acting by
    /// `other` first, then by `self`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let n = self.len();
        let perm: Vec<usize> = (0..n).map(|i| self.perm[other.perm[i]]).collect();
        let mut signs = vec![0i8; n];
        for (i, &p) in self.perm.iter().enumerate() {
            signs[p] = self.signs[p] * other.signs[i];
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut signs = vec![0i8; n];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
            signs[i] = self.signs[p];
        }
        SignedPermutation { perm, signs }
    }
}

/// A matrix together with its scale, as exchanged in the text format:
/// line 1 is `n k`, then `n` rows of `n` tokens (`+`/`-` or `1`/`-1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub k: usize,
    pub matrix: SignMatrix,
}

impl MatrixFile {
    pub fn new(k: usize, matrix: SignMatrix) -> Self {
        MatrixFile { k, matrix }
    }

    pub fn parse_with_cap(text: &str, cap: usize) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n k` header".into(),
        })?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                message: format!("expected `n k`, got {header:?}"),
            });
        }
        let parse_num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: hline,
                message: format!("{s:?} is not a nonnegative integer"),
            })
        };
        let n = parse_num(nums[0])?;
        let k = parse_num(nums[1])?;
        if n == 0 {
            return Err(Error::Empty);
        }
        let cap = cap.min(MAX_SUPPORTED_DIM);
        if n > cap {
            return Err(Error::DimensionCap { n, cap });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in 0..n {
            let (lineno, line) = lines.next().ok_or(Error::Parse {
                line: hline + row + 1,
                message: format!("expected {n} matrix rows, found {row}"),
            })?;
            let before = entries.len();
            for tok in line.split_whitespace() {
                entries.push(match tok {
                    "+" | "1" | "+1" => 1,
                    "-" | "-1" => -1,
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("invalid token {tok:?}"),
                        })
                    }
                });
            }
            if entries.len() - before != n {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {n} tokens, found {}", entries.len() - before),
                });
            }
        }
        if let Some((lineno, _)) = lines.next() {
            return Err(Error::Parse {
                line: lineno,
                message: "trailing content after matrix".into(),
            });
        }
        Ok(MatrixFile {
            k,
            matrix: SignMatrix::with_cap(n, entries, cap)?,
        })
    }
}

impl FromStr for MatrixFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MatrixFile::parse_with_cap(s, DEFAULT_MAX_DIM)
    }
}

impl fmt::Display for MatrixFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.matrix.n(), self.k)?;
        write!(f, "{}", self.matrix)
    }
}
