#![allow(dead_code)]

use nestedint::generate::generate_signed;
use nestedint::PermutationSet;
use proptest::prelude::*;

/// `1..=max_k` shuffled permutations of `1..=n`, `n` in `1..=max_n`.
pub fn unsigned_rows(max_n: usize, max_k: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        let id: Vec<u64> = (1..=n as u64).collect();
        proptest::collection::vec(Just(id).prop_shuffle(), k)
    })
}

/// Framed signed rows: either shuffled interiors with random signs, or the
/// identity scrambled by a few signed reversals (which keeps many conserved
/// intervals around).
pub fn framed_rows(max_n: usize, max_k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    let shuffled = (2..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        let interior: Vec<i64> = (2..n as i64).collect();
        let row = (Just(interior.clone()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n - 2)).prop_map(
            move |(mut mid, flips)| {
                for (x, f) in mid.iter_mut().zip(flips) {
                    if f {
                        *x = -*x;
                    }
                }
                let mut row = vec![1];
                row.extend(mid);
                row.push(n as i64);
                row
            },
        );
        let id: Vec<i64> = (1..=n as i64).collect();
        (Just(id), proptest::collection::vec(row, k - 1)).prop_map(|(id, mut rest)| {
            rest.insert(0, id);
            rest
        })
    });
    let reversed = (2..=max_n, 1..=max_k, any::<u64>(), 0..4usize)
        .prop_map(|(n, k, seed, r)| generate_signed(n, k, seed, r));
    prop_oneof![shuffled, reversed]
}

pub fn set_of(rows: &[Vec<u64>]) -> PermutationSet {
    PermutationSet::from_unsigned(rows).unwrap()
}

pub fn signed_set_of(rows: &[Vec<i64>]) -> PermutationSet {
    PermutationSet::from_signed(rows).unwrap()
}
