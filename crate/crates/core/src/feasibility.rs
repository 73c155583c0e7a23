//! Which parameter triples `(n, k, r)` admit an absolutely flat idempotent,
//! and the rank 2 counting bounds.
//!
//! The elementary conditions are integrality of `m = (n - rk)/2` and
//! `u = (n - k)/2` with `m >= 0`. They are sufficient for even `n`; for odd
//! `n` only rank 1 occurs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Why a triple was accepted or rejected. Checks are applied in the order
/// listed, the first failing one is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// `n - k` is odd, so `u` is not an integer.
    ParityFail,
    /// `r k > n`, so `m` would be negative.
    RkExceedsN,
    /// `n - r k` is odd.
    NonIntegerM,
    /// Elementary conditions hold but `n` is odd and `r > 1`.
    OddNRankAboveOne,
    Ok,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::ParityFail => "parity-fail",
            Reason::RkExceedsN => "rk-exceeds-n",
            Reason::NonIntegerM => "non-integer-m",
            Reason::OddNRankAboveOne => "odd-n-rank-above-1",
            Reason::Ok => "ok",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub elementary_ok: bool,
    pub exists: bool,
    /// Number of negative diagonal entries, when integral and nonnegative.
    pub m: Option<usize>,
    /// Negatives per row in normalized form, when integral and nonnegative.
    pub u: Option<usize>,
    pub reason: Reason,
}

/// A parameter triple satisfying the elementary conditions, with its derived
/// `m` and `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub m: usize,
    pub u: usize,
}

impl Triple {
    /// Accepts any triple passing the elementary conditions, even when no
    /// matrix exists (odd `n`, `r > 1`).
    pub fn new(n: usize, k: usize, r: usize) -> Result<Triple> {
        let v = check_triple(n, k, r);
        match (v.elementary_ok, v.m, v.u) {
            (true, Some(m), Some(u)) => Ok(Triple { n, k, r, m, u }),
            _ => Err(Error::Infeasible {
                n,
                k,
                r,
                reason: v.reason,
            }),
        }
    }

    /// Like [`Triple::new`] but also requires existence.
    pub fn existing(n: usize, k: usize, r: usize) -> Result<Triple> {
        let v = check_triple(n, k, r);
        if !v.exists {
            return Err(Error::Infeasible {
                n,
                k,
                r,
                reason: v.reason,
            });
        }
        Triple::new(n, k, r)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.r)
    }
}

fn half_if_even_nonneg(x: i64) -> Option<usize> {
    (x >= 0 && x % 2 == 0).then_some((x / 2) as usize)
}

/// Decides the elementary conditions and existence for `(n, k, r)`.
///
/// # Panics
///
/// If any argument is zero.
pub fn check_triple(n: usize, k: usize, r: usize) -> FeasibilityVerdict {
    assert!(n > 0 && k > 0 && r > 0, "n, k, r must be positive");
    let (ni, ki, ri) = (n as i64, k as i64, r as i64);
    let m = half_if_even_nonneg(ni - ri * ki);
    let u = half_if_even_nonneg(ni - ki);

    let reason = if (ni - ki) % 2 != 0 {
        Reason::ParityFail
    } else if ri * ki > ni {
        Reason::RkExceedsN
    } else if (ni - ri * ki) % 2 != 0 {
        Reason::NonIntegerM
    } else if n % 2 == 1 && r > 1 {
        Reason::OddNRankAboveOne
    } else {
        Reason::Ok
    };
    let elementary_ok = matches!(reason, Reason::Ok | Reason::OddNRankAboveOne);
    FeasibilityVerdict {
        n,
        k,
        r,
        elementary_ok,
        exists: reason == Reason::Ok,
        m,
        u,
        reason,
    }
}

/// All triples with `n <= n_max` for which a matrix exists, sorted by
/// `(n, k, r)`.
pub fn feasible_triples(n_max: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 1..=n {
            for r in 1..=n / k {
                if check_triple(n, k, r).exists {
                    out.push(Triple::new(n, k, r).expect("existing triple is elementary"));
                }
            }
        }
    }
    out
}

/// Bounds on the number `N` of inequivalent rank 2 idempotents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountBounds {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
}

/// `lower = C(h+2, 2)` and `upper = h(h+1)(h+2)/6 + lower` where
/// `h = floor(m/2)` and `m = (n - 2k)/2`.
pub fn rank2_bounds(n: usize, k: usize) -> Result<CountBounds> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("n and k must be positive".into()));
    }
    let v = check_triple(n, k, 2);
    if !v.exists {
        return Err(Error::Infeasible {
            n,
            k,
            r: 2,
            reason: v.reason,
        });
    }
    let m = v.m.expect("existing triple has integral m");
    let h = (m / 2) as u64;
    let lower = (h + 2) * (h + 1) / 2;
    let upper = h * (h + 1) * (h + 2) / 6 + lower;
    Ok(CountBounds {
        n,
        k,
        m,
        lower,
        upper,
        exact: (lower == upper).then_some(lower),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_two_three() {
        let v = check_triple(8, 2, 3);
        assert!(v.exists && v.elementary_ok);
        assert_eq!((v.m, v.u), (Some(1), Some(3)));
    }

    #[test]
    fn odd_rank_three_is_elementary_but_absent() {
        let v = check_triple(9, 3, 3);
        assert!(v.elementary_ok);
        assert!(!v.exists);
        assert_eq!((v.m, v.u), (Some(0), Some(3)));
        assert_eq!(v.reason, Reason::OddNRankAboveOne);
    }

    #[test]
    fn non_integer_m() {
        let v = check_triple(7, 3, 2);
        assert!(!v.elementary_ok);
        assert_eq!(v.reason, Reason::NonIntegerM);
        assert_eq!(v.m, None);
        assert_eq!(v.u, Some(2));
    }

    #[test]
    fn other_reasons() {
        assert_eq!(check_triple(4, 1, 1).reason, Reason::ParityFail);
        assert_eq!(check_triple(4, 2, 3).reason, Reason::RkExceedsN);
        assert_eq!(check_triple(2, 4, 1).reason, Reason::RkExceedsN);
    }

    #[test]
    fn full_rank_one() {
        for n in 1..20 {
            let v = check_triple(n, n, 1);
            assert!(v.exists);
            assert_eq!((v.m, v.u), (Some(0), Some(0)));
        }
    }

    #[test]
    fn small_lists() {
        let t = |v: Vec<Triple>| v.iter().map(|t| (t.n, t.k, t.r)).collect::<Vec<_>>();
        assert_eq!(t(feasible_triples(2)), vec![(1, 1, 1), (2, 2, 1)]);
        let three = t(feasible_triples(3));
        assert!(three.contains(&(3, 1, 1)) && three.contains(&(3, 3, 1)));
        assert!(three.iter().all(|&(n, _, r)| n % 2 == 0 || r == 1));
    }

    #[test]
    fn bounds_examples() {
        for k in [2, 4, 6] {
            let b = rank2_bounds(2 * k, k).unwrap();
            assert_eq!((b.lower, b.upper, b.exact), (1, 1, Some(1)));
            let b = rank2_bounds(2 * k + 2, k).unwrap();
            assert_eq!((b.lower, b.upper, b.exact), (1, 1, Some(1)));
        }
        let b = rank2_bounds(8, 2).unwrap();
        assert_eq!((b.m, b.lower, b.upper, b.exact), (2, 3, 4, None));
    }

    #[test]
    fn bounds_reject_infeasible() {
        assert!(rank2_bounds(7, 1).is_err());
        assert!(rank2_bounds(6, 4).is_err());
        assert!(rank2_bounds(6, 3).is_err());
    }
}
