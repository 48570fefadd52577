mod support;

use nestedint::conserved_enum::{annotate_conserved, weak_b_nested, StepMark};
use nestedint::oracle::{self, DEFAULT_BOUND};
use nestedint::{ConservedTree, Interval, PermutationSet};
use proptest::prelude::*;
use support::{framed_rows, signed_set_of, unsigned_rows};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gap_verdicts_match_recursive_definition(rows in framed_rows(10, 4), b in 1usize..=3) {
        let set = signed_set_of(&rows);
        let tree = ConservedTree::build(&set).unwrap();
        let nested = oracle::all_b_nested(&oracle::all_conserved(&set, DEFAULT_BOUND).unwrap(), b);
        let ann = annotate_conserved(&tree, b);
        for id in 0..tree.len() {
            for (iv, verdict) in weak_b_nested(&tree, id, &ann) {
                prop_assert_eq!(verdict, nested.contains(&iv), "{} with b = {}", iv, b);
            }
            let node = tree.node(id);
            let gaps = node.frontiers.windows(2).filter(|w| w[1] - w[0] + 1 > b + 1).count();
            prop_assert_eq!(ann.node(id).gap_count(), gaps);
            prop_assert_eq!(ann.node(id).gap_at.len(), node.steps());
            prop_assert!(ann.node(id).gap_at.iter().all(|m| *m == StepMark::Small || node.interval.size() > b + 1));
        }
    }

    #[test]
    fn container_and_link_laws(rows in framed_rows(10, 4)) {
        let set = signed_set_of(&rows);
        let tree = ConservedTree::build(&set).unwrap();
        let strong: Vec<Interval> = tree.nodes().iter().map(|node| node.interval).collect();
        for (id, node) in tree.nodes().iter().enumerate() {
            for iv in node.weak_intervals().chain(std::iter::once(node.interval)) {
                prop_assert_eq!(tree.container(iv), Some(id));
                let smallest = strong.iter().filter(|s| s.contains(&iv)).min_by_key(|s| s.size()).copied();
                prop_assert_eq!(smallest, Some(node.interval));
            }
            match (node.parent, node.l_link) {
                (None, None) => prop_assert_eq!(node.interval, Interval::new(1, set.n())),
                (Some(parent), Some((lo, hi))) => {
                    let link = Interval::new(lo, hi);
                    let parent = tree.node(parent);
                    prop_assert!(link.strictly_contains(&node.interval));
                    prop_assert!(parent.interval.contains(&link));
                    prop_assert!(parent.step_index(lo, hi).is_some());
                }
                _ => prop_assert!(false, "parent and l_link disagree at {}", node.interval),
            }
        }
    }

    #[test]
    fn frontier_sets_are_closed_under_union(rows in framed_rows(10, 4), mask_a in any::<u16>(), mask_b in any::<u16>()) {
        let set = signed_set_of(&rows);
        let family = oracle::all_conserved(&set, DEFAULT_BOUND).unwrap();
        let tree = ConservedTree::build(&set).unwrap();
        for node in tree.nodes() {
            let pick = |mask: u16| -> Vec<usize> {
                node.frontiers.iter().enumerate().filter(|(i, _)| mask >> (i % 16) & 1 == 1).map(|(_, f)| *f).collect()
            };
            let (a, b) = (pick(mask_a), pick(mask_b));
            prop_assert!(oracle::is_frontier_set(&family, &a));
            prop_assert!(oracle::is_frontier_set(&family, &b));
            let mut union: Vec<usize> = a.iter().chain(&b).copied().collect();
            union.sort_unstable();
            union.dedup();
            prop_assert!(oracle::is_frontier_set(&family, &union));
        }
    }

    #[test]
    fn overlapping_conserved_intervals_close(rows in framed_rows(10, 4)) {
        let family = oracle::all_conserved(&signed_set_of(&rows), DEFAULT_BOUND).unwrap();
        for x in &family {
            for y in &family {
                let (u, c, v, d) = (x.lo, x.hi, y.lo, y.hi);
                if u < v && v < c && c < d {
                    for iv in [Interval::new(u, v), Interval::new(v, c), Interval::new(c, d), Interval::new(u, d)] {
                        prop_assert!(family.contains(&iv), "{} from {} and {}", iv, x, y);
                    }
                }
            }
        }
    }

    #[test]
    fn conserved_is_common(rows in framed_rows(10, 4)) {
        let set = signed_set_of(&rows);
        let conserved = oracle::all_conserved(&set, DEFAULT_BOUND).unwrap();
        let common = oracle::all_common(&set.unsigned(), DEFAULT_BOUND).unwrap();
        prop_assert!(conserved.is_subset(&common));
    }

    #[test]
    fn normalizing_twice_changes_nothing(rows in unsigned_rows(12, 5)) {
        let once = PermutationSet::from_unsigned(&rows).unwrap();
        let again = PermutationSet::from_signed(&once.signed_rows()).unwrap();
        prop_assert_eq!(again.signed_rows(), once.signed_rows());
    }

    #[test]
    fn relabeling_preserves_conserved_family(rows in framed_rows(10, 4), flips in any::<u16>(), shift in 1i64..50) {
        // rename x to x + shift and flip the sign of some labels in every row
        let n = rows[0].len();
        let renamed: Vec<Vec<i64>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        let x = v.abs();
                        let flip = x > 1 && x < n as i64 && flips >> (x % 16) & 1 == 1;
                        let w = v.signum() * (x + shift);
                        if flip { -w } else { w }
                    })
                    .collect()
            })
            .collect();
        let base = signed_set_of(&rows);
        let moved = signed_set_of(&renamed);
        prop_assert_eq!(moved.signed_rows(), base.signed_rows());
        prop_assert_eq!(
            oracle::all_conserved(&moved, DEFAULT_BOUND).unwrap(),
            oracle::all_conserved(&base, DEFAULT_BOUND).unwrap()
        );
    }
}

#[test]
fn frontiers_of_example_are_maximal() {
    let set = PermutationSet::from_signed(&[(1..=9).collect(), vec![1, -3, -2, 4, 5, -8, -7, -6, 9]]).unwrap();
    let family = oracle::all_conserved(&set, DEFAULT_BOUND).unwrap();
    let tree = ConservedTree::build(&set).unwrap();
    for node in tree.nodes() {
        for extra in node.interval.lo..=node.interval.hi {
            if node.frontiers.contains(&extra) {
                continue;
            }
            let mut more = node.frontiers.clone();
            more.push(extra);
            more.sort_unstable();
            assert!(!oracle::is_frontier_set(&family, &more));
        }
    }
}
