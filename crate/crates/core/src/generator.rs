//! Interval generators.
//!
//! A generator of a family of intervals of `{1..m}` is a pair of arrays
//! `(right, left)` such that `(i..j)` belongs to the family iff
//! `j <= right[i]` and `left[j] <= i`. The common intervals of the identity
//! and one permutation `P` have the generator
//!
//! * `right[i]`: largest `j` such that every value lying in `P` between the
//!   leftmost and rightmost position of `{i..j}` is at least `i`;
//! * `left[j]`: smallest `i` such that every such value is at most `j`.
//!
//! Both predicates are monotone, so each entry is found by a binary search
//! over range-extrema tables. The family of intervals common to several
//! permutations is the intersection of their families, and the intersection
//! of generated families is generated by the pointwise `min` of `right` and
//! `max` of `left`.

use crate::perm::{Interval, Permutation};

/// Sparse tables answering range min and range max in O(1).
struct Extrema {
    min: Vec<Vec<u32>>,
    max: Vec<Vec<u32>>,
}

impl Extrema {
    fn new(values: &[u32]) -> Self {
        let mut min = vec![values.to_vec()];
        let mut max = vec![values.to_vec()];
        let mut width = 1;
        while 2 * width <= values.len() {
            let (pmin, pmax) = (min.last().unwrap(), max.last().unwrap());
            let len = values.len() - 2 * width + 1;
            let nmin = (0..len).map(|i| pmin[i].min(pmin[i + width])).collect();
            let nmax = (0..len).map(|i| pmax[i].max(pmax[i + width])).collect();
            min.push(nmin);
            max.push(nmax);
            width *= 2;
        }
        Extrema { min, max }
    }

    /// `(min, max)` over the inclusive index range `lo..=hi`.
    fn query(&self, lo: usize, hi: usize) -> (u32, u32) {
        let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let other = hi + 1 - (1 << level);
        (
            self.min[level][lo].min(self.min[level][other]),
            self.max[level][lo].max(self.max[level][other]),
        )
    }
}

/// Generator arrays, 1-based (index 0 unused).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    right: Vec<usize>,
    left: Vec<usize>,
}

impl Generator {
    /// Generator of the common intervals of the identity and `perm`.
    pub fn for_permutation(perm: &Permutation) -> Self {
        let m = perm.len();
        // positions by value and values by position, both 0-based
        let pos: Vec<u32> = (1..=m).map(|v| perm.position(v) as u32).collect();
        let val: Vec<u32> = perm.elements().iter().map(|&v| v as u32).collect();
        let by_value = Extrema::new(&pos);
        let by_position = Extrema::new(&val);
        // extrema of the values found inside the span of labels lo..=hi
        let span_values = |lo: usize, hi: usize| {
            let (first, last) = by_value.query(lo - 1, hi - 1);
            by_position.query(first as usize, last as usize)
        };

        let mut right = vec![0; m + 1];
        let mut left = vec![0; m + 1];
        for i in 1..=m {
            // largest j in [i, m] with min value over span >= i
            let (mut ok, mut bad) = (i, m + 1);
            while bad - ok > 1 {
                let mid = (ok + bad) / 2;
                if span_values(i, mid).0 as usize >= i {
                    ok = mid;
                } else {
                    bad = mid;
                }
            }
            right[i] = ok;

            let j = i;
            // smallest l in [1, j] with max value over span <= j
            let (mut ok, mut bad) = (j, 0);
            while ok - bad > 1 {
                let mid = (ok + bad) / 2;
                if span_values(mid, j).1 as usize <= j {
                    ok = mid;
                } else {
                    bad = mid;
                }
            }
            left[j] = ok;
        }
        Generator { right, left }
    }

    /// Generator of the intervals common to every permutation yielded.
    pub fn for_permutations<'a>(n: usize, perms: impl IntoIterator<Item = &'a Permutation>) -> Self {
        let mut generator = Generator::full(n);
        for p in perms {
            assert_eq!(p.len(), n);
            if !p.is_identity() {
                generator.intersect(&Generator::for_permutation(p));
            }
        }
        generator
    }

    /// Generator of every interval of `{1..n}`.
    pub fn full(n: usize) -> Self {
        Generator {
            right: std::iter::once(0).chain(std::iter::repeat_n(n, n)).collect(),
            left: vec![1; n + 1],
        }
    }

    pub fn len(&self) -> usize {
        self.right.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn intersect(&mut self, other: &Generator) {
        assert_eq!(self.len(), other.len());
        for (r, &o) in self.right.iter_mut().zip(&other.right) {
            *r = (*r).min(o);
        }
        for (l, &o) in self.left.iter_mut().zip(&other.left) {
            *l = (*l).max(o);
        }
    }

    pub fn right(&self, i: usize) -> usize {
        self.right[i]
    }

    pub fn left(&self, j: usize) -> usize {
        self.left[j]
    }

    pub fn contains(&self, iv: Interval) -> bool {
        iv.hi <= self.right[iv.lo] && self.left[iv.hi] <= iv.lo
    }

    /// For every `i`, the largest `j` such that `(i..j)` is in the family,
    /// and for every `j` the smallest such `i`. Both 1-based.
    pub fn extents(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        let lefts: Vec<i64> = (1..=n).map(|j| self.left[j] as i64).collect();
        let neg_rights: Vec<i64> = (1..=n).map(|i| -(self.right[i] as i64)).collect();
        let left_tree = MinTree::new(&lefts);
        let right_tree = MinTree::new(&neg_rights);
        let mut max_right = vec![0; n + 1];
        let mut min_left = vec![0; n + 1];
        for i in 1..=n {
            // rightmost j in [i, right[i]] with left[j] <= i; j = i always qualifies
            max_right[i] = left_tree
                .last_at_most(i - 1, self.right[i] - 1, i as i64)
                .expect("singleton member")
                + 1;
            // leftmost l in [left[i], i] with right[l] >= i
            min_left[i] = right_tree
                .first_at_most(self.left[i] - 1, i - 1, -(i as i64))
                .expect("singleton member")
                + 1;
        }
        (max_right, min_left)
    }
}

/// Segment tree over `i64` minima with leftmost/rightmost threshold search.
pub(crate) struct MinTree {
    size: usize,
    tree: Vec<i64>,
}

impl MinTree {
    pub(crate) fn new(values: &[i64]) -> Self {
        let size = values.len().next_power_of_two().max(1);
        let mut tree = vec![i64::MAX; 2 * size];
        tree[size..size + values.len()].copy_from_slice(values);
        for node in (1..size).rev() {
            tree[node] = tree[2 * node].min(tree[2 * node + 1]);
        }
        MinTree { size, tree }
    }

    /// Leftmost index in `lo..=hi` whose value is `<= limit`.
    pub(crate) fn first_at_most(&self, lo: usize, hi: usize, limit: i64) -> Option<usize> {
        self.search(1, 0, self.size - 1, lo, hi, limit, false)
    }

    /// Rightmost index in `lo..=hi` whose value is `<= limit`.
    pub(crate) fn last_at_most(&self, lo: usize, hi: usize, limit: i64) -> Option<usize> {
        self.search(1, 0, self.size - 1, lo, hi, limit, true)
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        node: usize,
        node_lo: usize,
        node_hi: usize,
        lo: usize,
        hi: usize,
        limit: i64,
        from_right: bool,
    ) -> Option<usize> {
        if node_hi < lo || hi < node_lo || self.tree[node] > limit {
            return None;
        }
        if node_lo == node_hi {
            return Some(node_lo);
        }
        let mid = (node_lo + node_hi) / 2;
        let (a, b) = ((2 * node, node_lo, mid), (2 * node + 1, mid + 1, node_hi));
        let (first, second) = if from_right { (b, a) } else { (a, b) };
        self.search(first.0, first.1, first.2, lo, hi, limit, from_right)
            .or_else(|| self.search(second.0, second.1, second.2, lo, hi, limit, from_right))
    }
}
