mod support;

use std::collections::BTreeSet;

use nestedint::oracle::{self, DEFAULT_BOUND};
use nestedint::{
    count_b_nested_common, count_b_nested_conserved, enumerate_b_nested_common, enumerate_b_nested_conserved,
    ConservedTree, Interval, MinSize, PQTree,
};
use proptest::prelude::*;
use support::{framed_rows, set_of, signed_set_of, unsigned_rows};

fn set(intervals: Vec<Interval>) -> BTreeSet<Interval> {
    intervals.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn common_grows_with_b(rows in unsigned_rows(40, 4), b in 1usize..=6) {
        let tree = PQTree::build(&set_of(&rows));
        let smaller = set(enumerate_b_nested_common(&tree, b, MinSize::One).intervals);
        let larger = set(enumerate_b_nested_common(&tree, b + 1, MinSize::One).intervals);
        prop_assert!(smaller.is_subset(&larger));
    }

    #[test]
    fn conserved_grows_with_b(rows in framed_rows(40, 4), b in 1usize..=6) {
        let tree = ConservedTree::build(&signed_set_of(&rows)).unwrap();
        let smaller = set(enumerate_b_nested_conserved(&tree, b, MinSize::One).intervals);
        let larger = set(enumerate_b_nested_conserved(&tree, b + 1, MinSize::One).intervals);
        prop_assert!(smaller.is_subset(&larger));
    }

    #[test]
    fn short_intervals_are_always_nested(rows in unsigned_rows(12, 5), b in 1usize..=4) {
        let s = set_of(&rows);
        let tree = PQTree::build(&s);
        let nested = set(enumerate_b_nested_common(&tree, b, MinSize::One).intervals);
        for iv in oracle::all_common(&s, DEFAULT_BOUND).unwrap() {
            if iv.size() <= b + 1 {
                prop_assert!(nested.contains(&iv), "{}", iv);
            }
        }
    }

    #[test]
    fn q_scan_is_output_sensitive(rows in unsigned_rows(60, 5), b in 1usize..=5) {
        let tree = PQTree::build(&set_of(&rows));
        let report = enumerate_b_nested_common(&tree, b, MinSize::One);
        prop_assert!(report.scan_iterations <= 4 * (tree.n() as u64 + report.count()));
    }

    #[test]
    fn oracle_nested_is_monotone(rows in unsigned_rows(10, 4), b in 1usize..=4) {
        let family = oracle::all_common(&set_of(&rows), DEFAULT_BOUND).unwrap();
        let lo = oracle::all_b_nested(&family, b);
        let hi = oracle::all_b_nested(&family, b + 1);
        prop_assert!(lo.is_subset(&hi) && hi.is_subset(&family));
    }
}

#[test]
fn identity_law() {
    for n in 1..=50usize {
        let s = set_of(&[(1..=n as u64).collect()]);
        let tree = PQTree::build(&s);
        for b in [1, 2, 7, 100] {
            assert_eq!(count_b_nested_common(&tree, b, MinSize::One), (n * (n + 1) / 2) as u64);
        }
        if n >= 2 {
            let tree = ConservedTree::build(&s).unwrap();
            assert_eq!(count_b_nested_conserved(&tree, 1, MinSize::One), (n * (n + 1) / 2) as u64);
        }
    }
}

#[test]
fn large_b_admits_everything() {
    let s = set_of(&[(1..=9).collect(), vec![4, 2, 3, 1, 7, 8, 9, 6, 5], vec![5, 6, 1, 3, 2, 4, 9, 8, 7]]);
    let tree = PQTree::build(&s);
    let all = oracle::all_common(&s, DEFAULT_BOUND).unwrap();
    assert_eq!(set(enumerate_b_nested_common(&tree, 9, MinSize::One).intervals), all);
}
