//! Normal forms under signed-permutation similarity (and transposition).
//!
//! * [`normalize`] moves a positive diagonal entry to `(0, 0)` and makes the
//!   first column positive.
//! * [`row_types`] / [`col_types`] group rows (columns) that are equal or
//!   negated.
//! * [`to_standard_form`] reduces a rank 2 idempotent to the block layout
//!   `(+ | - | v | -v)` and reads off its [`Rank2Params`].
//! * [`canonical_rep`] is a total invariant: the lexicographically least
//!   matrix (row-major, `-` before `+`) in the orbit.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::construct::{BlockCounts, Rank2Params};
use crate::error::{Error, Result};
use crate::matrix::{SignMatrix, SignedPermutation};
use crate::verify::{exact_rank, is_flat_idempotent};

/// Largest dimension accepted by [`canonical_rep`].
pub const CANONICAL_MAX_DIM: usize = 16;

/// Brings an idempotent to normalized form.
///
/// The smallest index with a positive diagonal entry is swapped to position
/// 0, then a signature makes column 0 all positive. Returns the new matrix
/// and the group element `g` with `b.apply_similarity(g) == result`.
pub fn normalize(b: &SignMatrix, k: usize) -> Result<(SignMatrix, SignedPermutation)> {
    if !is_flat_idempotent(b, k) {
        return Err(Error::NotIdempotent { k });
    }
    let n = b.n();
    let root = (0..n)
        .find(|&i| b.get(i, i) > 0)
        .expect("an idempotent has positive trace");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, root);
    let swap = SignedPermutation::from_permutation(perm)?;
    let moved = b.apply_similarity(&swap)?;
    let signs = (0..n).map(|i| moved.get(i, 0)).collect();
    let g = SignedPermutation::from_signature(signs)?.compose(&swap)?;
    let out = b.apply_similarity(&g)?;
    Ok((out, g))
}

/// One class of rows (or columns) that agree up to sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeClass {
    /// Member indices in increasing order; the first is the representative.
    pub members: Vec<usize>,
    /// Sign of each member relative to the representative.
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypePartition {
    /// Classes ordered by their smallest member.
    pub classes: Vec<TypeClass>,
    /// Class sizes, largest first.
    pub multiplicity: Vec<usize>,
}

impl TypePartition {
    pub fn type_count(&self) -> usize {
        self.classes.len()
    }

    fn from_lines<'a>(lines: impl Iterator<Item = &'a [i8]>) -> TypePartition {
        let mut index: HashMap<Vec<i8>, usize> = HashMap::new();
        let mut classes: Vec<TypeClass> = Vec::new();
        for (i, line) in lines.enumerate() {
            let s = line[0];
            let key: Vec<i8> = line.iter().map(|&e| e * s).collect();
            match index.get(&key) {
                Some(&c) => {
                    classes[c].members.push(i);
                    classes[c].signs.push(s);
                }
                None => {
                    index.insert(key, classes.len());
                    classes.push(TypeClass {
                        members: vec![i],
                        signs: vec![s],
                    });
                }
            }
        }
        // Orientations so far are relative to `key`; rebase on the first member.
        for class in &mut classes {
            let rep = class.signs[0];
            for s in &mut class.signs {
                *s *= rep;
            }
        }
        let mut multiplicity: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
        multiplicity.sort_unstable_by(|a, b| b.cmp(a));
        TypePartition {
            classes,
            multiplicity,
        }
    }
}

pub fn row_types(m: &SignMatrix) -> TypePartition {
    TypePartition::from_lines(m.rows())
}

pub fn col_types(m: &SignMatrix) -> TypePartition {
    row_types(&m.transpose())
}

/// A rank 2 idempotent in standard form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardForm {
    pub matrix: SignMatrix,
    pub params: Rank2Params,
    /// Row multiplicity is `{x, n - x}`.
    pub x: usize,
    /// Column multiplicity is `{y, n - y}`.
    pub y: usize,
    /// `input.apply_similarity(transform) == matrix`.
    pub transform: SignedPermutation,
}

impl StandardForm {
    pub fn from_params(params: Rank2Params, transform: SignedPermutation) -> StandardForm {
        StandardForm {
            matrix: params.matrix(),
            x: params.x(),
            y: params.y(),
            params,
            transform,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum ColumnBlock {
    Positive,
    Negative,
    V,
    MinusV,
}

/// Reduces a rank 2 idempotent to standard form.
///
/// The root is the smallest index with a positive diagonal entry; `v` is
/// oriented so its root entry is `+`; within each block indices with
/// `v = +` come first and ties keep the input order.
pub fn to_standard_form(b: &SignMatrix, k: usize) -> Result<StandardForm> {
    if !is_flat_idempotent(b, k) {
        return Err(Error::NotIdempotent { k });
    }
    let rank = exact_rank(b)?;
    if rank != 2 {
        return Err(Error::WrongRank { rank });
    }
    let n = b.n();
    let root = (0..n)
        .find(|&i| b.get(i, i) > 0)
        .expect("an idempotent has positive trace");
    let s: Vec<i8> = (0..n).map(|i| b.get(i, root)).collect();
    let nm = |i: usize, j: usize| s[i] * s[j] * b.get(i, j);

    let j0 = (0..n)
        .find(|&j| {
            let first = nm(0, j);
            (1..n).any(|i| nm(i, j) != first)
        })
        .ok_or(Error::WrongRank { rank: 1 })?;
    let orient = nm(root, j0);
    let v: Vec<i8> = (0..n).map(|i| nm(i, j0) * orient).collect();

    let mut kinds = Vec::with_capacity(n);
    for j in 0..n {
        let col: Vec<i8> = (0..n).map(|i| nm(i, j)).collect();
        let kind = if col.iter().all(|&e| e > 0) {
            ColumnBlock::Positive
        } else if col.iter().all(|&e| e < 0) {
            ColumnBlock::Negative
        } else if col == v {
            ColumnBlock::V
        } else if col.iter().zip(&v).all(|(&a, &b)| a == -b) {
            ColumnBlock::MinusV
        } else {
            return Err(Error::InvalidParameter(
                "rank 2 idempotent with more than two column types".into(),
            ));
        };
        kinds.push(kind);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (kinds[i], v[i] < 0, i));
    debug_assert_eq!(order[0], root);

    let count =
        |kind: ColumnBlock, sign: i8| (0..n).filter(|&i| kinds[i] == kind && v[i] == sign).count();
    let counts = BlockCounts {
        a_p: count(ColumnBlock::Positive, 1),
        a_m: count(ColumnBlock::Positive, -1),
        b_p: count(ColumnBlock::Negative, 1),
        b_m: count(ColumnBlock::Negative, -1),
        c1p: count(ColumnBlock::V, 1),
        c1m: count(ColumnBlock::V, -1),
        c2p: count(ColumnBlock::MinusV, 1),
        c2m: count(ColumnBlock::MinusV, -1),
    };
    let params = Rank2Params::from_counts(n, k, counts)?;

    let mut perm = vec![0; n];
    let mut signs = vec![0i8; n];
    for (pos, &old) in order.iter().enumerate() {
        perm[old] = pos;
        signs[pos] = s[old];
    }
    let transform = SignedPermutation::new(perm, signs)?;
    let form = StandardForm::from_params(params, transform);
    debug_assert_eq!(
        b.apply_similarity(&form.transform).ok().as_ref(),
        Some(&form.matrix)
    );
    Ok(form)
}

/// Least matrix in the orbit under signed-permutation similarity and
/// transposition.
pub fn canonical_rep(m: &SignMatrix) -> Result<SignMatrix> {
    check_cap(m)?;
    let a = canonical_similarity(m);
    let b = canonical_similarity(&m.transpose());
    Ok(a.min(b))
}

/// Least matrix in the orbit under signed-permutation similarity only.
pub fn canonical_rep_similarity(m: &SignMatrix) -> Result<SignMatrix> {
    check_cap(m)?;
    Ok(canonical_similarity(m))
}

/// Hex SHA-256 of the canonical representative's row strings.
pub fn canonical_hash(m: &SignMatrix) -> Result<String> {
    use sha2::{Digest, Sha256};
    let rep = canonical_rep(m)?;
    let mut h = Sha256::new();
    for row in rep.row_strings() {
        h.update(row.as_bytes());
        h.update(b"\n");
    }
    Ok(hex::encode(h.finalize()))
}

fn check_cap(m: &SignMatrix) -> Result<()> {
    if m.n() > CANONICAL_MAX_DIM {
        return Err(Error::DimensionCap {
            n: m.n(),
            cap: CANONICAL_MAX_DIM,
        });
    }
    Ok(())
}

/// For each index, the smallest index `y` such that the transposition
/// `(x y)` is an automorphism of the matrix. Transposition automorphisms
/// generate an equivalence relation, so this labels its classes.
fn twin_classes(a: &[i8], n: usize) -> Vec<usize> {
    let at = |i: usize, j: usize| a[i * n + j];
    let twins = |x: usize, y: usize| {
        at(x, x) == at(y, y)
            && at(x, y) == at(y, x)
            && (0..n)
                .filter(|&z| z != x && z != y)
                .all(|z| at(x, z) == at(y, z) && at(z, x) == at(z, y))
    };
    let mut class = vec![0; n];
    for x in 0..n {
        class[x] = (0..x).find(|&y| class[y] == y && twins(x, y)).unwrap_or(x);
    }
    class
}

/// A partial signed permutation: `placed[i]` is the source index at
/// position `i`, `cells` the ordered partition of the remaining indices.
struct Branch {
    frame: usize,
    placed: Vec<usize>,
    cells: Vec<Vec<usize>>,
}

/// A matrix conjugated so that row `root` is `-1` off the diagonal.
struct Frame {
    entries: Vec<i8>,
    twins: Vec<usize>,
}

/// Breadth-first branch and bound over positions.
///
/// Row 0 of the minimum is `(d, -, ..., -)` with `d` the least diagonal entry:
/// the root's signature is then forced. Each later row `i` is fixed by the
/// index placed at position `i` together with the current ordered
/// partition (negatives first inside every cell), so only branches that
/// produce the least row survive each level. Twin indices inside a cell
/// lead to identical subtrees and are expanded once.
fn canonical_similarity(m: &SignMatrix) -> SignMatrix {
    let n = m.n();
    if n == 1 {
        return m.clone();
    }
    let dmin = (0..n).map(|i| m.get(i, i)).min().expect("n >= 1");
    let base_twins = twin_classes(m.entries(), n);

    let mut frames = Vec::new();
    let mut branches = Vec::new();
    for root in 0..n {
        if m.get(root, root) != dmin || base_twins[root] != root {
            continue;
        }
        let s: Vec<i8> = (0..n)
            .map(|x| if x == root { 1 } else { -m.get(root, x) })
            .collect();
        let mut entries = vec![0i8; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[x * n + y] = s[x] * s[y] * m.get(x, y);
            }
        }
        let twins = twin_classes(&entries, n);
        branches.push(Branch {
            frame: frames.len(),
            placed: vec![root],
            cells: vec![(0..n).filter(|&x| x != root).collect()],
        });
        frames.push(Frame { entries, twins });
    }

    let mut row = vec![0i8; n];
    for level in 1..n {
        let mut best: Option<Vec<i8>> = None;
        let mut next: Vec<Branch> = Vec::new();
        for br in &branches {
            let f = &frames[br.frame];
            let at = |x: usize, y: usize| f.entries[x * n + y];
            let first = &br.cells[0];
            let mut seen_twins: Vec<usize> = Vec::new();
            for &c in first {
                if seen_twins.contains(&f.twins[c]) {
                    continue;
                }
                seen_twins.push(f.twins[c]);

                for (j, &p) in br.placed.iter().enumerate() {
                    row[j] = at(c, p);
                }
                row[level] = at(c, c);
                let mut pos = level + 1;
                for (ci, cell) in br.cells.iter().enumerate() {
                    let size = cell.len() - usize::from(ci == 0);
                    let neg = cell.iter().filter(|&&x| x != c && at(c, x) < 0).count();
                    row[pos..pos + neg].fill(-1);
                    row[pos + neg..pos + size].fill(1);
                    pos += size;
                }

                let ord = match &best {
                    None => Ordering::Less,
                    Some(b) => row[..].cmp(&b[..]),
                };
                if ord == Ordering::Greater {
                    continue;
                }
                if ord == Ordering::Less {
                    best = Some(row.clone());
                    next.clear();
                }
                let mut placed = br.placed.clone();
                placed.push(c);
                let mut cells = Vec::with_capacity(br.cells.len() + 1);
                for cell in &br.cells {
                    let (neg, pos): (Vec<usize>, Vec<usize>) = cell
                        .iter()
                        .filter(|&&x| x != c)
                        .partition(|&&x| at(c, x) < 0);
                    if !neg.is_empty() {
                        cells.push(neg);
                    }
                    if !pos.is_empty() {
                        cells.push(pos);
                    }
                }
                next.push(Branch {
                    frame: br.frame,
                    placed,
                    cells,
                });
            }
        }
        branches = next;
    }

    let br = &branches[0];
    let f = &frames[br.frame];
    let mut entries = Vec::with_capacity(n * n);
    for &x in &br.placed {
        for &y in &br.placed {
            entries.push(f.entries[x * n + y]);
        }
    }
    SignMatrix::from_raw(n, entries)
}
