//! Brute-force reference implementations, written straight from the
//! definitions and kept independent of the tree-based code paths. Meant for
//! small instances only.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::perm::{Interval, PermutationSet};

pub const DEFAULT_BOUND: usize = 64;

pub type Family = BTreeSet<Interval>;

fn check_bound(set: &PermutationSet, bound: usize) -> Result<()> {
    if set.n() > bound {
        return Err(Error::BoundExceeded { n: set.n(), bound });
    }
    Ok(())
}

/// Every interval that occupies consecutive positions in every permutation.
pub fn all_common(set: &PermutationSet, bound: usize) -> Result<Family> {
    check_bound(set, bound)?;
    let n = set.n();
    let mut family = Family::new();
    for lo in 1..=n {
        for hi in lo..=n {
            let iv = Interval::new(lo, hi);
            let common = set.permutations().all(|p| {
                let positions: Vec<usize> = (lo..=hi).map(|x| p.position(x)).collect();
                let first = *positions.iter().min().unwrap();
                let last = *positions.iter().max().unwrap();
                last - first + 1 == iv.size()
            });
            if common {
                family.insert(iv);
            }
        }
    }
    Ok(family)
}

/// Unit intervals, plus common intervals delimited in every permutation by
/// `+lo .. +hi` or `-hi .. -lo`.
pub fn all_conserved(set: &PermutationSet, bound: usize) -> Result<Family> {
    let common = all_common(set, bound)?;
    Ok(common
        .into_iter()
        .filter(|iv| {
            iv.size() == 1
                || set.perms().iter().all(|p| {
                    let positions: Vec<usize> = (iv.lo..=iv.hi).map(|x| p.permutation().position(x)).collect();
                    let first = *positions.iter().min().unwrap();
                    let last = *positions.iter().max().unwrap();
                    let (left, right) = (p.signed_element(first), p.signed_element(last));
                    let (lo, hi) = (iv.lo as i64, iv.hi as i64);
                    (left == lo && right == hi) || (left == -hi && right == -lo)
                })
        })
        .collect())
}

/// Members that are singletons or strictly contain a b-nested member at most
/// `b` elements smaller, decided by increasing size.
pub fn all_b_nested(family: &Family, b: usize) -> Family {
    assert!(b >= 1);
    let mut by_size: Vec<&Interval> = family.iter().collect();
    by_size.sort_by_key(|iv| iv.size());
    let mut nested = Family::new();
    for iv in by_size {
        let qualifies = iv.size() == 1
            || nested
                .iter()
                .any(|inner| iv.strictly_contains(inner) && inner.size() + b >= iv.size());
        if qualifies {
            nested.insert(*iv);
        }
    }
    nested
}

/// Members overlapping no other member.
pub fn strong_of(family: &Family) -> Family {
    family
        .iter()
        .filter(|iv| !family.iter().any(|other| iv.overlaps(other)))
        .copied()
        .collect()
}

/// Maximal frontier set of a member `iv`: every `f` in `iv` with
/// `(lo..f)` and `(f..hi)` both in the family. Any two such elements
/// `f < g` also span a member, since `(lo..g)` and `(f..hi)` overlap and an
/// inclusion-closed conserved family contains the intersection, and frontier
/// sets are closed under union, so the greedy set is the maximal one.
pub fn frontier_set_of(family: &Family, iv: Interval) -> Vec<usize> {
    (iv.lo..=iv.hi)
        .filter(|&f| family.contains(&Interval::new(iv.lo, f)) && family.contains(&Interval::new(f, iv.hi)))
        .collect()
}

/// True when every pair of `frontiers` spans a member.
pub fn is_frontier_set(family: &Family, frontiers: &[usize]) -> bool {
    frontiers.iter().enumerate().all(|(i, &f)| {
        frontiers[i + 1..]
            .iter()
            .all(|&g| family.contains(&Interval::new(f, g)))
    })
}

/// Irreducible members of size at least two: not a union of smaller members
/// of size at least two.
pub fn irreducible_of(family: &Family) -> Family {
    family
        .iter()
        .filter(|iv| {
            if iv.size() < 2 {
                return false;
            }
            // cover iv by proper sub-members of size >= 2
            let mut covered = vec![false; iv.size()];
            for inner in family.iter().filter(|j| j.size() >= 2 && iv.strictly_contains(j)) {
                for x in inner.lo..=inner.hi {
                    covered[x - iv.lo] = true;
                }
            }
            !covered.iter().all(|c| *c)
        })
        .copied()
        .collect()
}

/// Everything the oracle knows about one instance and one `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub common: Family,
    pub conserved: Family,
    pub b_nested_common: Family,
    pub b_nested_conserved: Family,
    pub strong_common: Family,
    pub strong_conserved: Family,
    pub frontier_sets: BTreeMap<Interval, Vec<usize>>,
}

impl OracleResult {
    /// Conserved parts are left empty when the set is not framed.
    pub fn compute(set: &PermutationSet, b: usize, bound: usize) -> Result<Self> {
        let common = all_common(set, bound)?;
        let framed = set.validate_conserved_frame().is_ok();
        let conserved = if framed { all_conserved(set, bound)? } else { Family::new() };
        let strong_conserved: Family = strong_of(&conserved).into_iter().filter(|iv| iv.size() >= 2).collect();
        let frontier_sets = strong_conserved
            .iter()
            .map(|&iv| (iv, frontier_set_of(&conserved, iv)))
            .collect();
        Ok(OracleResult {
            b_nested_common: all_b_nested(&common, b),
            b_nested_conserved: all_b_nested(&conserved, b),
            strong_common: strong_of(&common),
            common,
            conserved,
            strong_conserved,
            frontier_sets,
        })
    }
}
