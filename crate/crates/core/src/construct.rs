//! Explicit families of absolutely flat idempotents, all produced at scale
//! `B = kA`.
//!
//! * [`rank1_canonical`]: every row equal, `m` trailing negative columns.
//! * [`block_construction`]: `2x2` blocks `P = J_2` and `M = [[1,-1],[1,-1]]`
//!   arranged so that any even `(n, k, r)` meeting the elementary conditions
//!   is realised.
//! * [`rank2_standard`]: the complete rank 2 family in standard form,
//!   parameterised by `(t, q, l)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{check_triple, Triple};
use crate::matrix::SignMatrix;

/// Rank 1 representative: all rows equal to `(+ ... + - ... -)` with
/// `m = (n - k)/2` negatives.
pub fn rank1_canonical(n: usize, k: usize) -> Result<SignMatrix> {
    let t = Triple::existing(n, k, 1)?;
    let positives = n - t.m;
    SignMatrix::from_fn(n, |_, j| if j < positives { 1 } else { -1 })
}

/// The `2x2` blocks `kP` and `kM` for even `k`.
///
/// With `k = 2t` they satisfy `P^2 = P/t`, `PM = M/t`, `M^2 = 0` and
/// `MP = 0`.
pub fn pm_blocks(k: usize) -> Result<(SignMatrix, SignMatrix)> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "P/M blocks need a positive even k, got {k}"
        )));
    }
    Ok((
        SignMatrix::from_raw(2, vec![1, 1, 1, 1]),
        SignMatrix::from_raw(2, vec![1, -1, 1, -1]),
    ))
}

/// Block matrix over `l = n/2` block rows: `r` diagonal `t x t` groups of
/// `P`, an `m x t` group of `P` in the lower left corner, `M` everywhere
/// else (`k = 2t`, `m = l - rt`).
pub fn block_construction(n: usize, k: usize, r: usize) -> Result<SignMatrix> {
    Triple::existing(n, k, r)?;
    if n % 2 == 1 || k % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "block construction needs even n and k, got n = {n}, k = {k}"
        )));
    }
    let (p, mb) = pm_blocks(k)?;
    let t = k / 2;
    let diag_end = r * t;
    let is_p = |bi: usize, bj: usize| {
        if bi < diag_end {
            bj < diag_end && bi / t == bj / t
        } else {
            bj < t
        }
    };
    SignMatrix::from_fn(n, |i, j| {
        let block = if is_p(i / 2, j / 2) { &p } else { &mb };
        block.get(i % 2, j % 2)
    })
}

/// Row-split counts of the four column blocks of a rank 2 standard form.
///
/// The column vector `v` restricted to each block starts with `*_p` plus
/// signs followed by `*_m` minus signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockCounts {
    pub a_p: usize,
    pub a_m: usize,
    pub b_p: usize,
    pub b_m: usize,
    pub c1p: usize,
    pub c1m: usize,
    pub c2p: usize,
    pub c2m: usize,
}

/// Standard-form parameters of a rank 2 idempotent.
///
/// Column blocks are `a` all-positive columns, `b` all-negative columns,
/// `c` copies of `v` and `c` copies of `-v`. The free coordinates
/// `(t, q, l)` determine everything else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rank2Params {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub a_p: usize,
    pub a_m: usize,
    pub b_p: usize,
    pub b_m: usize,
    pub c1p: usize,
    pub c1m: usize,
    pub c2p: usize,
    pub c2m: usize,
    pub t: usize,
    pub q: usize,
    pub l: i64,
}

struct Rank2Shape {
    k: usize,
    m: usize,
    half_m_ceil: i64,
    half_m_floor: i64,
    quarter_n_ceil: i64,
    quarter_n_floor: i64,
}

impl Rank2Shape {
    fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidParameter("n and k must be positive".into()));
        }
        let t = Triple::existing(n, k, 2)?;
        let (m, n) = (t.m as i64, n as i64);
        Ok(Rank2Shape {
            k,
            m: t.m,
            half_m_ceil: (m + 1) / 2,
            half_m_floor: m / 2,
            quarter_n_ceil: (n + 3) / 4,
            quarter_n_floor: n / 4,
        })
    }

    fn l_range(&self, t: usize, q: usize) -> (i64, i64) {
        ((q + t) as i64 - self.half_m_floor, self.half_m_ceil)
    }

    fn counts(&self, t: usize, q: usize, l: i64) -> [i64; 8] {
        let (t, q, h) = (t as i64, q as i64, (self.k / 2) as i64);
        [
            h + t,
            self.quarter_n_ceil - l,
            t,
            self.half_m_ceil - l,
            h + q,
            self.half_m_floor - q - t + l,
            q,
            self.quarter_n_floor - q - t + l,
        ]
    }
}

impl Rank2Params {
    /// Parameters for free coordinates `(t, q, l)`; requires
    /// `q + t - floor(m/2) <= l <= ceil(m/2)`.
    pub fn new(n: usize, k: usize, t: usize, q: usize, l: i64) -> Result<Self> {
        let shape = Rank2Shape::new(n, k)?;
        let (lo, hi) = shape.l_range(t, q);
        if l < lo || l > hi {
            return Err(Error::InvalidParameter(format!(
                "l = {l} outside [{lo}, {hi}] for (n, k, t, q) = ({n}, {k}, {t}, {q})"
            )));
        }
        let raw = shape.counts(t, q, l);
        if let Some(neg) = raw.iter().position(|&x| x < 0) {
            return Err(Error::InvalidParameter(format!(
                "derived count #{neg} is negative ({}) for (t, q, l) = ({t}, {q}, {l})",
                raw[neg]
            )));
        }
        let c = |i: usize| raw[i] as usize;
        let counts = BlockCounts {
            a_p: c(0),
            a_m: c(1),
            b_p: c(2),
            b_m: c(3),
            c1p: c(4),
            c1m: c(5),
            c2p: c(6),
            c2m: c(7),
        };
        let p = Self::from_counts(n, k, counts)?;
        debug_assert_eq!((p.t, p.q, p.l), (t, q, l));
        Ok(p)
    }

    /// Recovers `(t, q, l)` from block counts, checking the block-size
    /// relations and the reduced system
    /// `a - b = k`, `b + c = u`, `a_p = b_p + k/2`, `c1p = c2p + k/2`.
    pub fn from_counts(n: usize, k: usize, bc: BlockCounts) -> Result<Self> {
        let shape = Rank2Shape::new(n, k)?;
        let a = bc.a_p + bc.a_m;
        let b = bc.b_p + bc.b_m;
        let c = bc.c1p + bc.c1m;
        let u = (n - k) / 2;
        let half_k = k / 2;
        let fail = |what: &str| {
            Err(Error::InvalidParameter(format!(
                "block counts {bc:?} violate {what} for (n, k) = ({n}, {k})"
            )))
        };
        if bc.c2p + bc.c2m != c {
            return fail("c1p + c1m = c2p + c2m");
        }
        if a + b + 2 * c != n {
            return fail("a + b + 2c = n");
        }
        if a != b + k {
            return fail("a - b = k");
        }
        if b + c != u {
            return fail("b + c = u");
        }
        if bc.a_p != bc.b_p + half_k {
            return fail("a_p = b_p + k/2");
        }
        if bc.c1p != bc.c2p + half_k {
            return fail("c1p = c2p + k/2");
        }
        let t = bc.b_p;
        let q = bc.c2p;
        let l = shape.half_m_ceil - bc.b_m as i64;
        // The reduced system forces the remaining counts.
        let expect = shape.counts(t, q, l);
        let got = [
            bc.a_p, bc.a_m, bc.b_p, bc.b_m, bc.c1p, bc.c1m, bc.c2p, bc.c2m,
        ];
        if expect.iter().zip(got).any(|(&e, g)| e != g as i64) {
            return fail("the (t, q, l) parameterisation");
        }
        Ok(Rank2Params {
            n,
            k,
            m: shape.m,
            a,
            b,
            c,
            a_p: bc.a_p,
            a_m: bc.a_m,
            b_p: bc.b_p,
            b_m: bc.b_m,
            c1p: bc.c1p,
            c1m: bc.c1m,
            c2p: bc.c2p,
            c2m: bc.c2m,
            t,
            q,
            l,
        })
    }

    pub fn counts(&self) -> BlockCounts {
        BlockCounts {
            a_p: self.a_p,
            a_m: self.a_m,
            b_p: self.b_p,
            b_m: self.b_m,
            c1p: self.c1p,
            c1m: self.c1m,
            c2p: self.c2p,
            c2m: self.c2m,
        }
    }

    /// Rows of the first type: `a_p + b_p + c1p + c2p = 2t + 2q + k`.
    pub fn x(&self) -> usize {
        self.a_p + self.b_p + self.c1p + self.c2p
    }

    /// Columns that are constant: `a + b = k + 2 ceil(m/2) + 2t - 2l`.
    pub fn y(&self) -> usize {
        self.a + self.b
    }

    /// The column `v` in standard-form index order.
    pub fn v_column(&self) -> Vec<i8> {
        let mut v = Vec::with_capacity(self.n);
        for (p, m) in [
            (self.a_p, self.a_m),
            (self.b_p, self.b_m),
            (self.c1p, self.c1m),
            (self.c2p, self.c2m),
        ] {
            v.extend(std::iter::repeat_n(1i8, p));
            v.extend(std::iter::repeat_n(-1i8, m));
        }
        v
    }

    /// Builds the standard-form matrix: columns `(+ | - | v | -v)`.
    pub fn matrix(&self) -> SignMatrix {
        let n = self.n;
        let v = self.v_column();
        let (ab, abc) = (self.a + self.b, self.a + self.b + self.c);
        let mut entries = Vec::with_capacity(n * n);
        for &vi in &v {
            for j in 0..n {
                entries.push(if j < self.a {
                    1
                } else if j < ab {
                    -1
                } else if j < abc {
                    vi
                } else {
                    -vi
                });
            }
        }
        SignMatrix::from_raw(n, entries)
    }
}

/// Standard-form rank 2 idempotent for free coordinates `(t, q, l)`.
pub fn rank2_standard(
    n: usize,
    k: usize,
    t: usize,
    q: usize,
    l: i64,
) -> Result<(Rank2Params, SignMatrix)> {
    let p = Rank2Params::new(n, k, t, q, l)?;
    let m = p.matrix();
    Ok((p, m))
}

/// Every admissible `(t, q, l)` for `(n, k, 2)` in lexicographic order.
pub fn enumerate_rank2_params(n: usize, k: usize) -> Result<Vec<(usize, usize, i64)>> {
    let shape = Rank2Shape::new(n, k)?;
    let mut out = Vec::new();
    // c1m >= 0 together with l <= ceil(m/2) forces t + q <= m.
    for t in 0..=shape.m {
        for q in 0..=shape.m - t {
            let (lo, hi) = shape.l_range(t, q);
            for l in lo..=hi {
                if shape.counts(t, q, l).iter().all(|&x| x >= 0) {
                    out.push((t, q, l));
                }
            }
        }
    }
    Ok(out)
}

/// Constructor selection for [`construct`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rank1,
    Block,
    Rank2,
}

impl Method {
    /// `rank1` for `r = 1`, otherwise the block construction.
    pub fn default_for(r: usize) -> Method {
        if r == 1 {
            Method::Rank1
        } else {
            Method::Block
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rank1 => "rank1",
            Method::Block => "block",
            Method::Rank2 => "rank2",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank1" => Ok(Method::Rank1),
            "block" => Ok(Method::Block),
            "rank2" => Ok(Method::Rank2),
            _ => Err(Error::InvalidParameter(format!("unknown method {s:?}"))),
        }
    }
}

/// Dispatches to one of the constructors. `tql` is only used by
/// [`Method::Rank2`] and defaults to `(0, 0, 0)`.
pub fn construct(
    n: usize,
    k: usize,
    r: usize,
    method: Method,
    tql: Option<(usize, usize, i64)>,
) -> Result<SignMatrix> {
    let v = check_triple(n, k, r);
    if !v.exists {
        return Err(Error::Infeasible {
            n,
            k,
            r,
            reason: v.reason,
        });
    }
    match method {
        Method::Rank1 if r == 1 => rank1_canonical(n, k),
        Method::Rank2 if r == 2 => {
            let (t, q, l) = tql.unwrap_or((0, 0, 0));
            rank2_standard(n, k, t, q, l).map(|(_, m)| m)
        }
        Method::Block => block_construction(n, k, r),
        _ => Err(Error::InvalidParameter(format!(
            "method {method} cannot build rank {r}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{exact_rank, is_flat_idempotent};

    fn rows(m: &SignMatrix) -> Vec<String> {
        m.row_strings()
    }

    #[test]
    fn rank1_three_one() {
        let m = rank1_canonical(3, 1).unwrap();
        assert_eq!(rows(&m), vec!["++-"; 3]);
        assert!(is_flat_idempotent(&m, 1));
    }

    #[test]
    fn rank1_full() {
        for n in 1..10 {
            assert_eq!(rank1_canonical(n, n).unwrap(), SignMatrix::ones(n).unwrap());
        }
    }

    #[test]
    fn rank1_five_three_dot_products() {
        let m = rank1_canonical(5, 3).unwrap();
        assert_eq!(rows(&m), vec!["++++-"; 5]);
        let prod = m.multiply(&m).unwrap();
        assert!(prod.equals_scaled(&m, 3));
    }

    #[test]
    fn rank1_rejects_infeasible() {
        assert!(rank1_canonical(4, 1).is_err());
        assert!(rank1_canonical(3, 5).is_err());
    }

    #[test]
    fn pm_relations_k2() {
        let (p, m) = pm_blocks(2).unwrap();
        assert!(m.multiply(&m).unwrap().is_zero());
        assert!(m.multiply(&p).unwrap().is_zero());
        assert!(pm_blocks(3).is_err());
        assert!(pm_blocks(0).is_err());
    }

    #[test]
    fn pm_relations_k4() {
        let (p, _) = pm_blocks(4).unwrap();
        // P^2 = P/2 at t = 2, i.e. J_2^2 = 2 J_2.
        assert!(p.multiply(&p).unwrap().equals_scaled(&p, 2));
    }

    #[test]
    fn block_eight_two_three_layout() {
        let m = block_construction(8, 2, 3).unwrap();
        let (p, mb) = pm_blocks(2).unwrap();
        let layout = [
            ['P', 'M', 'M', 'M'],
            ['M', 'P', 'M', 'M'],
            ['M', 'M', 'P', 'M'],
            ['P', 'M', 'M', 'M'],
        ];
        for (bi, brow) in layout.iter().enumerate() {
            for (bj, &tag) in brow.iter().enumerate() {
                let blk = if tag == 'P' { &p } else { &mb };
                for i in 0..2 {
                    for j in 0..2 {
                        assert_eq!(m.get(2 * bi + i, 2 * bj + j), blk.get(i, j));
                    }
                }
            }
        }
        assert!(is_flat_idempotent(&m, 2));
        assert_eq!(exact_rank(&m).unwrap(), 3);
    }

    #[test]
    fn block_smallest() {
        assert_eq!(
            block_construction(2, 2, 1).unwrap(),
            SignMatrix::ones(2).unwrap()
        );
    }

    #[test]
    fn block_six_two_two() {
        let m = block_construction(6, 2, 2).unwrap();
        let (p, _) = pm_blocks(2).unwrap();
        for (bi, bj) in [(0, 0), (1, 1), (2, 0)] {
            assert_eq!(m.get(2 * bi, 2 * bj + 1), p.get(0, 1));
        }
        assert_eq!(m.get(0, 3), -1);
        assert!(is_flat_idempotent(&m, 2));
        assert_eq!(exact_rank(&m).unwrap(), 2);
    }

    #[test]
    fn block_rejects_odd() {
        assert!(block_construction(5, 1, 1).is_err());
        assert!(block_construction(9, 3, 3).is_err());
    }

    #[test]
    fn rank2_m_zero_is_unique() {
        for k in [2, 4, 6] {
            assert_eq!(enumerate_rank2_params(2 * k, k).unwrap(), vec![(0, 0, 0)]);
            let (p, m) = rank2_standard(2 * k, k, 0, 0, 0).unwrap();
            assert_eq!(p.m, 0);
            assert!(is_flat_idempotent(&m, k));
        }
    }

    #[test]
    fn rank2_default_counts() {
        // t = q = l = 0 gives a_m = ceil(n/4), b_m = ceil(m/2), c1m = floor(m/2), c2m = floor(n/4).
        for (n, k) in [(8, 2), (10, 2), (12, 4), (14, 2)] {
            let (p, _) = rank2_standard(n, k, 0, 0, 0).unwrap();
            let m = (n - 2 * k) / 2;
            assert_eq!(
                (p.a_p, p.a_m, p.b_p, p.b_m, p.c1p, p.c1m, p.c2p, p.c2m),
                (
                    k / 2,
                    n.div_ceil(4),
                    0,
                    m.div_ceil(2),
                    k / 2,
                    m / 2,
                    0,
                    n / 4
                )
            );
            assert_eq!(p.x(), k);
        }
    }

    #[test]
    fn rank2_eight_two_sweep() {
        let params = enumerate_rank2_params(8, 2).unwrap();
        assert!(!params.is_empty());
        for (t, q, l) in params {
            let (p, m) = rank2_standard(8, 2, t, q, l).unwrap();
            assert!(is_flat_idempotent(&m, 2), "{t} {q} {l}");
            assert_eq!(exact_rank(&m).unwrap(), 2);
            assert_eq!(p.x(), 2 * t + 2 * q + 2);
            assert_eq!(p.y() as i64, 2 + 2 * 1 + 2 * t as i64 - 2 * l);
        }
    }

    #[test]
    fn rank2_out_of_range() {
        assert!(rank2_standard(8, 2, 0, 0, 2).is_err());
        assert!(rank2_standard(8, 2, 2, 1, 0).is_err());
        assert!(rank2_standard(7, 2, 0, 0, 0).is_err());
    }

    #[test]
    fn from_counts_rejects_broken_system() {
        let (p, _) = rank2_standard(8, 2, 0, 0, 0).unwrap();
        let mut bc = p.counts();
        bc.a_p += 1;
        bc.a_m -= 1;
        assert!(Rank2Params::from_counts(8, 2, bc).is_err());
        assert_eq!(Rank2Params::from_counts(8, 2, p.counts()).unwrap(), p);
    }

    #[test]
    fn construct_dispatch() {
        assert!(construct(8, 2, 3, Method::Rank1, None).is_err());
        assert!(construct(8, 2, 3, Method::Rank2, None).is_err());
        assert!(construct(9, 3, 3, Method::Block, None).is_err());
        let m = construct(8, 2, 2, Method::Rank2, Some((1, 0, 1))).unwrap();
        assert!(is_flat_idempotent(&m, 2));
        assert_eq!("block".parse::<Method>().unwrap(), Method::Block);
        assert!("nope".parse::<Method>().is_err());
    }
}
