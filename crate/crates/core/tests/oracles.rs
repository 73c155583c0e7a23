//! Census, rank and classification results checked against slow, direct
//! computations that share no code with the fast paths.

use std::collections::{BTreeMap, HashMap};

use afi::{
    canonical_rep, census_general, census_rank2, col_types, enumerate_rank2_params, exact_rank,
    feasible_triples, is_flat_idempotent, rank2_bounds, row_types, CensusRecord, SignMatrix,
    SignedPermutation,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Rows with a leading `+` and exactly `u` minus signs.
fn normalized_rows(n: usize, u: usize) -> Vec<Vec<i8>> {
    (0u32..1 << (n - 1))
        .filter(|bits| bits.count_ones() as usize == u)
        .map(|bits| {
            let mut row = vec![1i8];
            row.extend((0..n - 1).map(|j| if bits >> j & 1 == 1 { -1 } else { 1 }));
            row
        })
        .collect()
}

/// Every flat idempotent with an all-positive first column, by trying every
/// combination of admissible rows.
fn brute_force_normalized(n: usize, k: usize) -> Vec<SignMatrix> {
    let rows = normalized_rows(n, (n - k) / 2);
    let mut idx = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let chosen: Vec<&Vec<i8>> = idx.iter().map(|&i| &rows[i]).collect();
        let m = SignMatrix::from_rows(&chosen).unwrap();
        if is_flat_idempotent(&m, k) {
            out.push(m);
        }
        let mut p = 0;
        loop {
            if p == n {
                return out;
            }
            idx[p] += 1;
            if idx[p] < rows.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Normalized rank 2 idempotents built literally: two row vectors and an
/// assignment of each row to one of them.
fn literal_rank2(n: usize, k: usize) -> Vec<SignMatrix> {
    let rows = normalized_rows(n, (n - k) / 2);
    let mut out = Vec::new();
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            for mask in 1u32..(1 << n) - 1 {
                let chosen: Vec<&Vec<i8>> = (0..n)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            &rows[b]
                        } else {
                            &rows[a]
                        }
                    })
                    .collect();
                let m = SignMatrix::from_rows(&chosen).unwrap();
                if is_flat_idempotent(&m, k) && exact_rank(&m).unwrap() == 2 {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Makes the first column positive by a signature similarity.
fn renormalize(m: &SignMatrix) -> SignMatrix {
    let s = m.column(0);
    m.apply_similarity(&SignedPermutation::from_signature(s).unwrap())
        .unwrap()
}

fn swap(n: usize, i: usize, j: usize) -> SignedPermutation {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i, j);
    SignedPermutation::from_permutation(perm).unwrap()
}

/// Orbits of a set of normalized matrices under similarity and transposition,
/// found by union-find over generators. Returns orbit sizes keyed by member.
fn orbits(ms: &[SignMatrix]) -> Vec<Vec<SignMatrix>> {
    let index: HashMap<&SignMatrix, usize> = ms.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut parent: Vec<usize> = (0..ms.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let n = ms[0].n();
    let mut gens: Vec<SignedPermutation> = (1..n.saturating_sub(1))
        .map(|i| swap(n, i, i + 1))
        .collect();
    gens.extend((1..n).map(|j| swap(n, 0, j)));
    for (i, m) in ms.iter().enumerate() {
        let mut images = vec![renormalize(&m.transpose())];
        for g in &gens {
            let img = m.apply_similarity(g).unwrap();
            if img.get(0, 0) == 1 {
                images.push(renormalize(&img));
            }
        }
        for img in images {
            let j = *index.get(&img).expect("image left the normalized set");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let mut groups: BTreeMap<usize, Vec<SignMatrix>> = BTreeMap::new();
    for (i, m) in ms.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(m.clone());
    }
    groups.into_values().collect()
}

/// Compares census records with orbits computed from scratch: same number
/// of classes, and each orbit maps onto one record with matching size.
fn check_against_orbits(records: &[CensusRecord], orbits: &[Vec<SignMatrix>]) {
    assert_eq!(records.len(), orbits.len());
    let by_canon: HashMap<&SignMatrix, &CensusRecord> =
        records.iter().map(|r| (&r.canonical, r)).collect();
    let mut seen = std::collections::HashSet::new();
    for orbit in orbits {
        let c = canonical_rep(&orbit[0]).unwrap();
        for m in orbit.iter().step_by(7) {
            assert_eq!(canonical_rep(m).unwrap(), c);
        }
        let rec = by_canon.get(&c).expect("orbit missing from census");
        assert_eq!(
            rec.raw_count,
            orbit.len() as u64,
            "class size for {}",
            rec.triple
        );
        assert_eq!(exact_rank(&orbit[0]).unwrap(), rec.triple.r);
        assert!(seen.insert(c));
    }
}

#[test]
fn general_census_matches_brute_force() {
    for (n, k) in [
        (1, 1),
        (2, 2),
        (3, 1),
        (3, 3),
        (4, 2),
        (4, 4),
        (5, 1),
        (5, 3),
        (6, 2),
        (6, 4),
    ] {
        let all = brute_force_normalized(n, k);
        let recs = census_general(n, k).unwrap();
        let total: u64 = recs.iter().map(|r| r.raw_count).sum();
        assert_eq!(total, all.len() as u64, "({n},{k})");
        check_against_orbits(&recs, &orbits(&all));
    }
}

#[test]
fn rank2_census_matches_literal_enumeration() {
    for (n, k) in [(4, 2), (6, 2), (8, 2), (8, 4)] {
        let lit = literal_rank2(n, k);
        let recs = census_rank2(n, k).unwrap();
        check_against_orbits(&recs, &orbits(&lit));
    }
}

#[test]
fn general_and_rank2_census_agree_on_rank2() {
    for (n, k) in [(4, 2), (6, 2)] {
        let general: Vec<_> = census_general(n, k)
            .unwrap()
            .into_iter()
            .filter(|r| r.triple.r == 2)
            .collect();
        let rank2 = census_rank2(n, k).unwrap();
        let strip = |rs: &[CensusRecord]| {
            rs.iter()
                .map(|r| {
                    (
                        r.canonical.clone(),
                        r.raw_count,
                        r.row_mult.clone(),
                        r.col_mult.clone(),
                    )
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&general), strip(&rank2), "({n},{k})");
    }
}

#[test]
fn every_rank2_class_has_two_row_and_column_types() {
    for t in feasible_triples(12).into_iter().filter(|t| t.r == 2) {
        let recs = census_rank2(t.n, t.k).unwrap();
        let b = rank2_bounds(t.n, t.k).unwrap();
        assert!(
            b.lower <= recs.len() as u64 && recs.len() as u64 <= b.upper,
            "{t}"
        );
        for r in &recs {
            assert!(is_flat_idempotent(&r.canonical, t.k));
            assert_eq!(row_types(&r.canonical).type_count(), 2);
            assert_eq!(col_types(&r.canonical).type_count(), 2);
            assert_eq!(canonical_rep(&r.canonical).unwrap(), r.canonical);
            let p = r
                .standard_params
                .as_ref()
                .expect("rank 2 record without parameters");
            let xs = {
                let mut v = vec![p.x(), t.n - p.x()];
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            };
            assert!(xs == r.row_mult || xs == r.col_mult, "{t}: x = {}", p.x());
        }
    }
}

/// Determinant by cofactor expansion, exact.
fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|b| b.count_ones() as usize == s)
        .map(|b| (0..n).filter(|&i| b >> i & 1 == 1).collect())
        .collect()
}

/// Largest order of a nonvanishing minor.
fn rank_by_minors(m: &SignMatrix) -> usize {
    let n = m.n();
    for s in (1..=n).rev() {
        for rows in subsets(n, s) {
            for cols in subsets(n, s) {
                let sub: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m.get(i, j) as i64).collect())
                    .collect();
                if det(&sub) != 0 {
                    return s;
                }
            }
        }
    }
    0
}

#[test]
fn rank_matches_minors() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        // Bias towards repeated rows so low ranks show up.
        let base: Vec<Vec<i8>> = (0..rng.gen_range(1..=n))
            .map(|_| (0..n).map(|_| if rng.gen() { 1 } else { -1 }).collect())
            .collect();
        let m = SignMatrix::from_fn(n, |i, j| {
            let r = &base[(i * 7 + 3) % base.len()];
            let flip = if (i + j) % 5 == 0 && rng.gen_bool(0.3) {
                -1
            } else {
                1
            };
            r[j] * flip
        })
        .unwrap();
        assert_eq!(exact_rank(&m).unwrap(), rank_by_minors(&m), "\n{m}");
    }
    for t in feasible_triples(6) {
        let m = afi::construct(t.n, t.k, t.r, afi::Method::default_for(t.r), None).unwrap();
        assert_eq!(rank_by_minors(&m), t.r);
    }
}

#[test]
fn m_two_triples_per_invariant_pair() {
    // With x = k + 2i and y = k + 2j, i >= j, there are j + 1 parameter triples.
    for (n, k) in [(8, 2), (12, 4), (16, 6), (20, 8)] {
        let params = enumerate_rank2_params(n, k).unwrap();
        let m = (n - 2 * k) / 2;
        assert_eq!(m, 2);
        let half = m / 2;
        for i in 0..=half {
            for j in 0..=i {
                let count = params
                    .iter()
                    .filter(|&&(t, q, l)| t + q == i && (m.div_ceil(2) + t) as i64 - l == j as i64)
                    .count();
                assert_eq!(count, j + 1, "({n},{k}) i={i} j={j}");
            }
        }
    }
}

#[test]
fn equivalence_is_an_equivalence_relation_on_census_output() {
    use afi::{are_equivalent, rank2_standard};
    let recs = census_rank2(10, 2).unwrap();
    let mut rng = StdRng::seed_from_u64(3);
    for (i, a) in recs.iter().enumerate() {
        for (j, b) in recs.iter().enumerate() {
            assert_eq!(are_equivalent(&a.canonical, &b.canonical).unwrap(), i == j);
        }
    }
    // Every standard form lands in exactly one class.
    for (t, q, l) in enumerate_rank2_params(10, 2).unwrap() {
        let (_, m) = rank2_standard(10, 2, t, q, l).unwrap();
        let mut perm: Vec<usize> = (0..10).collect();
        rand::seq::SliceRandom::shuffle(&mut perm[..], &mut rng);
        let g = SignedPermutation::new(
            perm,
            (0..10).map(|_| if rng.gen() { 1 } else { -1 }).collect(),
        )
        .unwrap();
        let scrambled = m.apply_similarity(&g).unwrap();
        let hits = recs
            .iter()
            .filter(|r| are_equivalent(&r.canonical, &scrambled).unwrap())
            .count();
        assert_eq!(hits, 1, "({t},{q},{l})");
    }
}
