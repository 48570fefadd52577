//! Seeded random instances. The first permutation is always the identity.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Independent uniform permutations.
    Uniform,
    /// Recursively nested blocks, shared by all permutations. The top
    /// `depth` levels split every block into `span` parts arranged so that
    /// each block stays a strong common interval; this holds for
    /// `span >= 4`, or `span == 3` with at least three permutations. Deeper
    /// blocks are split at random and kept either in order (possibly
    /// reversed) or shuffled.
    PlantedNested { depth: usize, span: usize },
}

/// `k` unsigned permutations of `1..=n`.
pub fn generate(n: usize, k: usize, seed: u64, model: Model) -> Vec<Vec<i64>> {
    assert!(n >= 1 && k >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders: Vec<Vec<usize>> = match model {
        Model::Uniform => {
            let mut orders = vec![(1..=n).collect::<Vec<_>>()];
            for _ in 1..k {
                let mut p: Vec<usize> = (1..=n).collect();
                p.shuffle(&mut rng);
                orders.push(p);
            }
            orders
        }
        Model::PlantedNested { depth, span } => {
            let planter = Planter { k, depth, span: span.max(2) };
            planter.plant(1, n, 0, &mut rng)
        }
    };
    orders
        .into_iter()
        .map(|o| o.into_iter().map(|x| x as i64).collect())
        .collect()
}

/// `k` signed permutations of `1..=n` framed by `+1 .. +n`: each non-first
/// one is the identity after `reversals` random signed reversals of interior
/// segments.
pub fn generate_signed(n: usize, k: usize, seed: u64, reversals: usize) -> Vec<Vec<i64>> {
    assert!(n >= 1 && k >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity: Vec<i64> = (1..=n as i64).collect();
    let mut rows = vec![identity.clone()];
    for _ in 1..k {
        let mut p = identity.clone();
        if n >= 3 {
            for _ in 0..reversals {
                let a = rng.gen_range(1..n - 1);
                let b = rng.gen_range(a..n - 1);
                p[a..=b].reverse();
                p[a..=b].iter_mut().for_each(|x| *x = -*x);
            }
        }
        rows.push(p);
    }
    rows
}

struct Planter {
    k: usize,
    depth: usize,
    span: usize,
}

impl Planter {
    /// Orders of the labels `lo..=hi` in each of the `k` permutations.
    fn plant(&self, lo: usize, hi: usize, level: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
        let size = hi - lo + 1;
        if size == 1 {
            return vec![vec![lo]; self.k];
        }
        let planted = level < self.depth;
        let bounds = if planted {
            even_split(lo, hi, self.span.min(size))
        } else {
            let parts = rng.gen_range(2..=self.span.min(size));
            random_split(lo, hi, parts, rng)
        };
        let parts: Vec<Vec<Vec<usize>>> = bounds
            .iter()
            .map(|&(a, b)| self.plant(a, b, level + 1, rng))
            .collect();
        let s = parts.len();

        let arrangements: Vec<Vec<usize>> = if planted {
            self.strong_arrangements(s, rng)
        } else if rng.gen_bool(0.4) {
            (1..self.k)
                .map(|_| {
                    let mut order: Vec<usize> = (0..s).collect();
                    if rng.gen_bool(0.5) {
                        order.reverse();
                    }
                    order
                })
                .collect()
        } else {
            (1..self.k)
                .map(|_| {
                    let mut order: Vec<usize> = (0..s).collect();
                    order.shuffle(rng);
                    order
                })
                .collect()
        };

        let mut out = Vec::with_capacity(self.k);
        out.push(parts.iter().flat_map(|p| p[0].iter().copied()).collect());
        for (k, order) in arrangements.iter().enumerate() {
            out.push(order.iter().flat_map(|&i| parts[i][k + 1].iter().copied()).collect());
        }
        out
    }

    /// Child orders for permutations `2..=k` such that for every `t`, some
    /// permutation keeps the first `t` children off both ends. Then no
    /// common interval crosses the block boundary.
    fn strong_arrangements(&self, s: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
        let mut best = Vec::new();
        for _ in 0..256 {
            let candidate: Vec<Vec<usize>> = (1..self.k)
                .map(|_| {
                    let mut order: Vec<usize> = (0..s).collect();
                    order.shuffle(rng);
                    order
                })
                .collect();
            let ok = (1..s).all(|t| candidate.iter().any(|order| !prefix_at_end(order, t)));
            best = candidate;
            if ok {
                break;
            }
        }
        best
    }
}

/// Whether children `0..t` fill a prefix or a suffix of `order`.
fn prefix_at_end(order: &[usize], t: usize) -> bool {
    order[..t].iter().all(|&c| c < t) || order[order.len() - t..].iter().all(|&c| c < t)
}

fn even_split(lo: usize, hi: usize, parts: usize) -> Vec<(usize, usize)> {
    let size = hi - lo + 1;
    (0..parts)
        .map(|i| (lo + i * size / parts, lo + (i + 1) * size / parts - 1))
        .collect()
}

fn random_split(lo: usize, hi: usize, parts: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let size = hi - lo + 1;
    let mut cuts: Vec<usize> = (1..size).collect::<Vec<_>>().choose_multiple(rng, parts - 1).copied().collect();
    cuts.sort_unstable();
    let mut bounds = Vec::with_capacity(parts);
    let mut start = lo;
    for c in cuts {
        bounds.push((start, lo + c - 1));
        start = lo + c;
    }
    bounds.push((start, hi));
    bounds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermutationSet;
    use crate::pqtree::PQTree;

    #[test]
    fn deterministic_and_identity_first() {
        for model in [Model::Uniform, Model::PlantedNested { depth: 2, span: 4 }] {
            let a = generate(30, 4, 11, model);
            assert_eq!(a, generate(30, 4, 11, model));
            assert_ne!(a, generate(30, 4, 12, model));
            assert_eq!(a[0], (1..=30).collect::<Vec<i64>>());
            assert!(PermutationSet::from_signed(&a).is_ok());
        }
        assert_eq!(generate(1, 1, 5, Model::Uniform), vec![vec![1]]);
    }

    #[test]
    fn planted_levels_are_strong() {
        for seed in 0..50 {
            let rows = generate(9, 3, seed, Model::PlantedNested { depth: 2, span: 3 });
            let tree = PQTree::build(&PermutationSet::from_signed(&rows).unwrap());
            assert!(tree.depth() >= 3, "seed {seed}: {rows:?}");
            for lo in [1, 4, 7] {
                assert!(tree.node_of(crate::perm::Interval::new(lo, lo + 2)).is_some());
            }
        }
        for seed in 0..20 {
            let rows = generate(64, 2, seed, Model::PlantedNested { depth: 3, span: 4 });
            let tree = PQTree::build(&PermutationSet::from_signed(&rows).unwrap());
            assert!(tree.depth() >= 4, "seed {seed}");
        }
    }

    #[test]
    fn signed_instances_are_framed() {
        for seed in 0..20 {
            let rows = generate_signed(10, 4, seed, 3);
            let set = PermutationSet::from_signed(&rows).unwrap();
            assert!(set.validate_conserved_frame().is_ok());
        }
        assert_eq!(generate_signed(2, 3, 0, 5), vec![vec![1, 2]; 3]);
    }
}
