//! Fixtures shared by the benchmarks.

use nestedint::generate::{generate, generate_signed, Model};
use nestedint::PermutationSet;

/// Planted common-interval instance of `n` elements and `k` permutations.
pub fn planted(n: usize, k: usize, seed: u64) -> PermutationSet {
    let rows = generate(n, k, seed, Model::PlantedNested { depth: 3, span: 5 });
    PermutationSet::from_signed(&rows).expect("generated rows are permutations")
}

/// Framed signed instance obtained by random reversals.
pub fn signed(n: usize, k: usize, seed: u64) -> PermutationSet {
    let rows = generate_signed(n, k, seed, n / 8 + 1);
    PermutationSet::from_signed(&rows).expect("generated rows are permutations")
}
