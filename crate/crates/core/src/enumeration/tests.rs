use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use super::*;
use crate::qseries::{partition_side_table, univariate_coefficients, UnivariateFamily};

/// Every upper-triangular filling of size `m`, no pruning at all.
fn naive_fillings(n: usize, m: u32) -> Vec<TriangularMatrix> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    fn go(cells: &[(usize, usize)], k: usize, left: u32, cur: &mut Vec<Vec<u32>>, out: &mut Vec<TriangularMatrix>) {
        if k == cells.len() {
            if left == 0 {
                out.push(TriangularMatrix::from_rows(cur));
            }
            return;
        }
        let (i, j) = cells[k];
        for v in 0..=left {
            cur[i][j] = v;
            go(cells, k + 1, left - v, cur, out);
        }
        cur[i][j] = 0;
    }
    go(&cells, 0, m, &mut vec![vec![0; n]; n], &mut out);
    out
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn fishburn_size_one_and_two() {
    let one: Vec<_> = enumerate_fishburn(1).collect();
    assert_eq!(one, vec![TriangularMatrix::from_rows(&[vec![1]])]);
    let two: Vec<_> = enumerate_fishburn(2).collect();
    assert_eq!(
        two,
        vec![
            TriangularMatrix::from_rows(&[vec![2]]),
            TriangularMatrix::from_rows(&[vec![1, 0], vec![0, 1]]),
        ]
    );
    assert_eq!(enumerate_fishburn(0).count(), 0);
}

#[test]
fn fishburn_size_three_by_last_column() {
    let t = refined_counts(MatrixFamily::Fishburn, 3);
    let by_l = t.by_last_column();
    assert_eq!(by_l.get(&1), Some(&big(2)));
    assert_eq!(by_l.get(&2), Some(&big(2)));
    assert_eq!(by_l.get(&3), Some(&big(1)));
    assert_eq!(t.total(), big(5));
}

#[test]
fn refined_examples() {
    let f2 = refined_counts(MatrixFamily::Fishburn, 2).by_last_column();
    assert_eq!(f2, BTreeMap::from([(1, big(1)), (2, big(1))]));
    let r2 = refined_counts(MatrixFamily::RowFishburn, 2).by_last_column();
    assert_eq!(r2, BTreeMap::from([(1, big(1)), (2, big(2))]));
    let s1 = refined_counts(MatrixFamily::SelfDual, 1);
    assert_eq!(s1.total(), big(2));
    assert_eq!(s1.marginal(1), BTreeMap::from([(0, big(1)), (1, big(1))]));
    for fam in [MatrixFamily::Fishburn, MatrixFamily::RowFishburn, MatrixFamily::SelfDual] {
        assert_eq!(refined_counts(fam, 0).total(), big(1));
    }
}

#[test]
fn backtracker_agrees_with_naive_fillings() {
    for m in 1..=5u32 {
        let mut fish = Vec::new();
        let mut row = Vec::new();
        for n in 1..=m as usize {
            for mat in naive_fillings(n, m) {
                if mat.is_fishburn() {
                    fish.push(mat.clone());
                }
                if mat.is_row_fishburn() {
                    row.push(mat);
                }
            }
        }
        assert_eq!(enumerate_fishburn(m).collect::<Vec<_>>(), fish, "fishburn m={m}");
        assert_eq!(enumerate_row_fishburn(m).collect::<Vec<_>>(), row, "row m={m}");
    }
}

#[test]
fn self_dual_agrees_with_filtered_fillings() {
    for m in 1..=3u32 {
        let mut oracle: Vec<TriangularMatrix> = Vec::new();
        for n in 1..=2 * m as usize {
            for size in m..=2 * m {
                for mat in naive_fillings(n, size) {
                    if mat.is_fishburn() {
                        if let Some(sd) = SelfDualMatrix::from_full(mat) {
                            if sd.reduced_size() == m {
                                oracle.push(sd.full().clone());
                            }
                        }
                    }
                }
            }
        }
        let mut got: Vec<TriangularMatrix> = enumerate_self_dual(m).map(|s| s.full().clone()).collect();
        oracle.sort();
        got.sort();
        assert_eq!(got, oracle, "m={m}");
    }
}

#[test]
fn counts_match_fast_path() {
    let f = univariate_coefficients(UnivariateFamily::Fishburn, 8);
    let r = univariate_coefficients(UnivariateFamily::RowFishburn, 7);
    for m in 0..=8u32 {
        let total = refined_counts(MatrixFamily::Fishburn, m).total();
        assert_eq!(BigInt::from(total), f[m as usize], "f_{m}");
    }
    for m in 0..=7u32 {
        let total = refined_counts(MatrixFamily::RowFishburn, m).total();
        assert_eq!(BigInt::from(total), r[m as usize], "r_{m}");
    }
}

#[test]
fn duality_swaps_statistics() {
    for m in 1..=7u32 {
        let t = refined_counts(MatrixFamily::Fishburn, m);
        for (k, v) in &t.counts {
            assert_eq!(&t.get(&[k[1], k[0]]), v, "m={m} key={k:?}");
        }
    }
    for mat in enumerate_fishburn(5) {
        let d = mat.reverse_transpose();
        assert!(d.is_fishburn());
        assert_eq!(d.reverse_transpose(), mat);
        assert_eq!(d.first_row_sum(), mat.last_column_sum());
    }
}

#[test]
fn self_dual_facts_hold() {
    assert!(verify_facts(0).rows.is_empty());
    let one = verify_facts(1);
    assert!(one.holds());
    assert_eq!(one.rows.len(), 1);
    let r = verify_facts(5);
    assert!(r.holds(), "{:?}", r.violations().collect::<Vec<_>>());
    assert!(r.rows.iter().any(|row| row.m == 5));
}

#[test]
fn self_dual_completion_is_fixed() {
    for m in 1..=4 {
        for sd in enumerate_self_dual(m) {
            assert!(sd.full().is_fishburn());
            assert!(sd.full().is_self_dual());
        }
    }
}

#[test]
fn interval_orders_match_matrices() {
    let f = univariate_coefficients(UnivariateFamily::Fishburn, 6);
    for n in 1..=6usize {
        let orders = enumerate_interval_orders(n).unwrap();
        assert_eq!(BigInt::from(orders.len()), f[n], "n={n}");

        let mut maxima: BTreeMap<u32, BigUint> = BTreeMap::new();
        for o in &orders {
            *maxima.entry(o.maximal as u32).or_default() += 1u32;
        }
        let matrices = refined_counts(MatrixFamily::Fishburn, n as u32);
        assert_eq!(maxima, matrices.by_last_column(), "n={n}");

        let mut minima: BTreeMap<u32, BigUint> = BTreeMap::new();
        for o in &orders {
            *minima.entry(o.minimal as u32).or_default() += 1u32;
        }
        assert_eq!(minima, matrices.marginal(0), "n={n}");

        let self_dual_orders = orders.iter().filter(|o| o.self_dual).count();
        let self_dual_matrices = enumerate_fishburn(n as u32).filter(|m| m.is_self_dual()).count();
        assert_eq!(self_dual_orders, self_dual_matrices, "n={n}");
    }
}

#[test]
fn ascent_sequences() {
    assert_eq!(count_ascent_sequences(0), big(1));
    assert_eq!(count_ascent_sequences(3), big(5));
    assert_eq!(count_ascent_sequences(6), big(217));
    let f = univariate_coefficients(UnivariateFamily::Fishburn, 10);
    for n in 0..=10 {
        assert_eq!(BigInt::from(count_ascent_sequences(n)), f[n], "n={n}");
    }
}

#[test]
fn partition_parity_examples() {
    assert_eq!(distinct_partition_parity(1, 1), BigInt::from(1));
    assert_eq!(distinct_partition_parity(2, 3), BigInt::from(-1));
    assert_eq!(distinct_partition_parity(3, 6), BigInt::from(1));
    assert_eq!(distinct_partition_parity(3, 2), BigInt::from(0));
}

#[test]
fn partition_table_matches_direct_count() {
    let t = partition_side_table(7, 30);
    for r in 1..=7 {
        for s in 1..=30 {
            assert_eq!(t.get(r, s), distinct_partition_parity(r as u32, s as u32), "a_({r},{s})");
        }
    }
}

#[test]
fn dump_format() {
    let m = TriangularMatrix::from_rows(&[vec![1, 0], vec![0, 2]]);
    assert_eq!(m.dump(), "n=2\n1 0\n0 2\n");
    assert_eq!(m.to_string(), "[[1,0],[0,2]]");
}

fn arb_fishburn() -> impl Strategy<Value = TriangularMatrix> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(0u32..=2, n * n).prop_map(move |vals| {
            let mut rows = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i..n {
                    rows[i][j] = vals[i * n + j];
                }
                // keep every row and column alive through the diagonal
                if (i..n).all(|j| rows[i][j] == 0) || (0..=i).all(|k| rows[k][i] == 0) {
                    rows[i][i] += 1;
                }
            }
            TriangularMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #[test]
    fn reverse_transpose_is_an_involution(m in arb_fishburn()) {
        prop_assert!(m.is_fishburn());
        let d = m.reverse_transpose();
        prop_assert!(d.is_fishburn());
        prop_assert_eq!(d.first_row_sum(), m.last_column_sum());
        prop_assert_eq!(d.last_column_sum(), m.first_row_sum());
        prop_assert_eq!(d.size(), m.size());
        prop_assert_eq!(d.reverse_transpose(), m);
    }
}
