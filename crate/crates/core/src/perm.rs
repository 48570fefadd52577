//! Permutations, intervals and input normalization.
//!
//! Every algorithm in this crate works on a [`PermutationSet`] whose first
//! permutation is the identity. Intervals are therefore plain label ranges
//! `(lo..hi)` of the identity, and the relabeling needed to get there is kept
//! on the set so results can be mapped back to the caller's labels.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{End, Error, Result};

/// A contiguous label range `(lo..hi)`, both ends inclusive and 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        debug_assert!(1 <= lo && lo <= hi, "bad interval ({lo}..{hi})");
        Interval { lo, hi }
    }

    pub fn singleton(x: usize) -> Self {
        Interval::new(x, x)
    }

    pub fn size(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn strictly_contains(&self, other: &Interval) -> bool {
        self.contains(other) && self != other
    }

    pub fn contains_element(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True when the two intervals intersect and neither contains the other.
    pub fn overlaps(&self, other: &Interval) -> bool {
        let intersect = self.lo <= other.hi && other.lo <= self.hi;
        intersect && !self.contains(other) && !other.contains(self)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}..{})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, value: i64) -> i64 {
        match self {
            Sign::Plus => value,
            Sign::Minus => -value,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A label as it appears in an input file, before renumbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RawLabel {
    pub label: u64,
    pub sign: Sign,
}

impl RawLabel {
    pub fn plus(label: u64) -> Self {
        RawLabel { label, sign: Sign::Plus }
    }

    /// Splits a nonzero signed integer into label and sign.
    pub fn from_signed(value: i64) -> Self {
        let sign = if value < 0 { Sign::Minus } else { Sign::Plus };
        RawLabel {
            label: value.unsigned_abs(),
            sign,
        }
    }
}

/// A bijection on `{1..n}` stored with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    elements: Vec<usize>,
    // positions[label], index 0 unused
    positions: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its sequence of labels. Returns `None` when
    /// the sequence is not a bijection on `{1..len}`.
    pub fn from_elements(elements: Vec<usize>) -> Option<Self> {
        let n = elements.len();
        let mut positions = vec![usize::MAX; n + 1];
        for (p, &x) in elements.iter().enumerate() {
            if x == 0 || x > n || positions[x] != usize::MAX {
                return None;
            }
            positions[x] = p;
        }
        Some(Permutation { elements, positions })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            elements: (1..=n).collect(),
            positions: std::iter::once(usize::MAX).chain(0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Label at 0-based position `p`.
    pub fn element(&self, p: usize) -> usize {
        self.elements[p]
    }

    /// 0-based position of `label`.
    pub fn position(&self, label: usize) -> usize {
        self.positions[label]
    }

    pub fn is_identity(&self) -> bool {
        self.elements.iter().enumerate().all(|(p, &x)| x == p + 1)
    }

    /// Minimum and maximum position occupied by the labels of `iv`.
    pub fn span(&self, iv: Interval) -> (usize, usize) {
        (iv.lo..=iv.hi)
            .map(|x| self.positions[x])
            .fold((usize::MAX, 0), |(lo, hi), p| (lo.min(p), hi.max(p)))
    }

    /// True when the labels of `iv` occupy consecutive positions.
    pub fn is_interval(&self, iv: Interval) -> bool {
        let (lo, hi) = self.span(iv);
        hi - lo + 1 == iv.size()
    }
}

/// A permutation whose elements carry a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Permutation,
    // indexed by position
    signs: Vec<Sign>,
}

impl SignedPermutation {
    pub fn new(perm: Permutation, signs: Vec<Sign>) -> Self {
        assert_eq!(perm.len(), signs.len());
        SignedPermutation { perm, signs }
    }

    pub fn unsigned(perm: Permutation) -> Self {
        let signs = vec![Sign::Plus; perm.len()];
        SignedPermutation { perm, signs }
    }

    /// Builds from nonzero signed labels, e.g. `[1, -3, -2, 4]`.
    pub fn from_signed(values: &[i64]) -> Option<Self> {
        let elements = values.iter().map(|v| v.unsigned_abs() as usize).collect();
        let perm = Permutation::from_elements(elements)?;
        let signs = values
            .iter()
            .map(|&v| if v < 0 { Sign::Minus } else { Sign::Plus })
            .collect();
        Some(SignedPermutation { perm, signs })
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn sign_at(&self, p: usize) -> Sign {
        self.signs[p]
    }

    pub fn sign_of(&self, label: usize) -> Sign {
        self.signs[self.perm.position(label)]
    }

    /// Signed label at 0-based position `p`.
    pub fn signed_element(&self, p: usize) -> i64 {
        self.signs[p].apply(self.perm.element(p) as i64)
    }

    pub fn signed_elements(&self) -> Vec<i64> {
        (0..self.len()).map(|p| self.signed_element(p)).collect()
    }

    /// Conserved-interval test for this single permutation: `iv` is a unit
    /// interval, or its block is delimited by `+lo .. +hi` or `-hi .. -lo`.
    pub fn is_conserved(&self, iv: Interval) -> bool {
        if iv.size() == 1 {
            return true;
        }
        if !self.perm.is_interval(iv) {
            return false;
        }
        let (first, last) = self.perm.span(iv);
        let lo = iv.lo as i64;
        let hi = iv.hi as i64;
        let (left, right) = (self.signed_element(first), self.signed_element(last));
        (left == lo && right == hi) || (left == -hi && right == -lo)
    }
}

/// `K` permutations over `{1..n}`, the first one being the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationSet {
    n: usize,
    perms: Vec<SignedPermutation>,
    // relabeling[x - 1] is the original label of renumbered element x; None for sentinels
    relabeling: Vec<Option<u64>>,
    signed: bool,
}

impl PermutationSet {
    /// Renumbers the input so that the first permutation becomes the
    /// identity. A renumbered element's sign is its sign in `P_k` times its
    /// sign in `P_1`, so the first permutation ends up all positive.
    pub fn normalize(raw: &[Vec<RawLabel>]) -> Result<Self> {
        let first = raw.first().ok_or(Error::Empty)?;
        let n = first.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut new_label: HashMap<u64, (usize, Sign)> = HashMap::with_capacity(n);
        for (p, r) in first.iter().enumerate() {
            if new_label.insert(r.label, (p + 1, r.sign)).is_some() {
                return Err(Error::DuplicateElement {
                    perm: 0,
                    label: r.label,
                });
            }
        }
        let mut perms = Vec::with_capacity(raw.len());
        perms.push(SignedPermutation::unsigned(Permutation::identity(n)));
        let mut signed = first.iter().any(|r| r.sign == Sign::Minus);
        for (k, row) in raw.iter().enumerate().skip(1) {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    perm: k,
                    expected: n,
                    found: row.len(),
                });
            }
            let mut seen = vec![false; n + 1];
            let mut elements = Vec::with_capacity(n);
            let mut signs = Vec::with_capacity(n);
            for r in row {
                let &(x, first_sign) = new_label
                    .get(&r.label)
                    .ok_or(Error::NotAPermutation { perm: k, label: r.label })?;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotAPermutation { perm: k, label: r.label });
                }
                signed |= r.sign == Sign::Minus;
                elements.push(x);
                signs.push(r.sign * first_sign);
            }
            let perm = Permutation::from_elements(elements).expect("checked bijection");
            perms.push(SignedPermutation::new(perm, signs));
        }
        let relabeling = first.iter().map(|r| Some(r.label)).collect();
        Ok(PermutationSet {
            n,
            perms,
            relabeling,
            signed,
        })
    }

    /// Convenience constructor from unsigned labels.
    pub fn from_unsigned(rows: &[Vec<u64>]) -> Result<Self> {
        let raw: Vec<Vec<RawLabel>> = rows
            .iter()
            .map(|r| r.iter().map(|&l| RawLabel::plus(l)).collect())
            .collect();
        Self::normalize(&raw)
    }

    /// Convenience constructor from nonzero signed labels.
    pub fn from_signed(rows: &[Vec<i64>]) -> Result<Self> {
        let raw: Vec<Vec<RawLabel>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| RawLabel::from_signed(v)).collect())
            .collect();
        Self::normalize(&raw)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.perms.len()
    }

    /// Whether any input element carried a minus sign.
    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn perms(&self) -> &[SignedPermutation] {
        &self.perms
    }

    pub fn permutations(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.perms.iter().map(SignedPermutation::permutation)
    }

    /// Original label of renumbered element `x`, `None` for a sentinel.
    pub fn original_label(&self, x: usize) -> Option<u64> {
        self.relabeling[x - 1]
    }

    pub fn relabeling(&self) -> &[Option<u64>] {
        &self.relabeling
    }

    /// Renumbered rows as signed integers, the inverse of [`Self::from_signed`]
    /// up to relabeling.
    pub fn signed_rows(&self) -> Vec<Vec<i64>> {
        self.perms.iter().map(SignedPermutation::signed_elements).collect()
    }

    pub fn is_common_interval(&self, iv: Interval) -> bool {
        assert!(iv.hi <= self.n, "{iv} out of range for n = {}", self.n);
        self.permutations().all(|p| p.is_interval(iv))
    }

    pub fn is_conserved_interval(&self, iv: Interval) -> bool {
        assert!(iv.hi <= self.n, "{iv} out of range for n = {}", self.n);
        self.perms.iter().all(|p| p.is_conserved(iv))
    }

    /// Checks that every permutation starts with `+1` and ends with `+n`.
    pub fn validate_conserved_frame(&self) -> Result<()> {
        let n = self.n;
        for (k, p) in self.perms.iter().enumerate() {
            let first = p.signed_element(0);
            if first != 1 {
                return Err(Error::BadFrame {
                    perm: k,
                    end: End::Left,
                    found: first,
                    expected: 1,
                });
            }
            let last = p.signed_element(n - 1);
            if last != n as i64 {
                return Err(Error::BadFrame {
                    perm: k,
                    end: End::Right,
                    found: last,
                    expected: n as i64,
                });
            }
        }
        Ok(())
    }

    /// Wraps every permutation in sentinels `+0 .. +(n+1)` and relabels to
    /// `{1..n+2}`. The sentinels have no original label.
    pub fn framed(&self) -> PermutationSet {
        let n = self.n + 2;
        let perms = self
            .perms
            .iter()
            .map(|p| {
                let mut elements = Vec::with_capacity(n);
                let mut signs = Vec::with_capacity(n);
                elements.push(1);
                signs.push(Sign::Plus);
                for q in 0..p.len() {
                    elements.push(p.permutation().element(q) + 1);
                    signs.push(p.sign_at(q));
                }
                elements.push(n);
                signs.push(Sign::Plus);
                let perm = Permutation::from_elements(elements).expect("shifted bijection");
                SignedPermutation::new(perm, signs)
            })
            .collect();
        let relabeling = std::iter::once(None)
            .chain(self.relabeling.iter().copied())
            .chain(std::iter::once(None))
            .collect();
        PermutationSet {
            n,
            perms,
            relabeling,
            signed: self.signed,
        }
    }

    /// Same permutations with every sign dropped.
    pub fn unsigned(&self) -> PermutationSet {
        PermutationSet {
            n: self.n,
            perms: self
                .perms
                .iter()
                .map(|p| SignedPermutation::unsigned(p.permutation().clone()))
                .collect(),
            relabeling: self.relabeling.clone(),
            signed: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn normalize_relabels_by_first_inverse() {
        let set = PermutationSet::from_unsigned(&[vec![2, 1, 3], vec![3, 1, 2]]).unwrap();
        assert_eq!(set.perms()[0].permutation().elements(), &[1, 2, 3]);
        assert_eq!(set.perms()[1].permutation().elements(), &[3, 2, 1]);
        assert_eq!(set.relabeling(), &[Some(2), Some(1), Some(3)]);
    }

    #[test]
    fn normalize_identity_is_untouched() {
        let set = PermutationSet::from_unsigned(&[vec![1, 2, 3]]).unwrap();
        assert!(set.perms()[0].permutation().is_identity());
        assert_eq!(set.relabeling(), &[Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn normalize_errors() {
        assert_eq!(
            PermutationSet::from_unsigned(&[vec![1, 2], vec![1, 1]]),
            Err(Error::NotAPermutation { perm: 1, label: 1 })
        );
        assert_eq!(
            PermutationSet::from_unsigned(&[vec![1, 2], vec![1, 3]]),
            Err(Error::NotAPermutation { perm: 1, label: 3 })
        );
        assert_eq!(
            PermutationSet::from_unsigned(&[vec![1, 2], vec![1]]),
            Err(Error::LengthMismatch {
                perm: 1,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            PermutationSet::from_unsigned(&[vec![4, 4]]),
            Err(Error::DuplicateElement { perm: 0, label: 4 })
        );
        assert_eq!(PermutationSet::from_unsigned(&[]), Err(Error::Empty));
        assert_eq!(PermutationSet::from_unsigned(&[vec![]]), Err(Error::Empty));
    }

    #[test]
    fn sign_transfer_is_a_product() {
        let set = PermutationSet::from_signed(&[vec![-5, 7, 9], vec![5, -9, -7]]).unwrap();
        assert_eq!(set.signed_rows(), vec![vec![1, 2, 3], vec![-1, -3, -2]]);
    }

    #[test]
    fn frame_checks() {
        let good =
            PermutationSet::from_signed(&[(1..=9).collect(), vec![1, -3, -2, 4, 5, -8, -7, -6, 9]])
                .unwrap();
        assert_eq!(good.validate_conserved_frame(), Ok(()));

        let bad = PermutationSet::from_signed(&[vec![1, 2, 3], vec![-1, 2, 3]]).unwrap();
        assert_eq!(
            bad.validate_conserved_frame(),
            Err(Error::BadFrame {
                perm: 1,
                end: End::Left,
                found: -1,
                expected: 1
            })
        );
        let bad = PermutationSet::from_signed(&[vec![1, 2, 3], vec![1, 3, 2]]).unwrap();
        assert!(matches!(
            bad.validate_conserved_frame(),
            Err(Error::BadFrame { perm: 1, end: End::Right, found: 2, .. })
        ));
    }

    #[test]
    fn framing_adds_sentinels() {
        let set = PermutationSet::from_unsigned(&[vec![1, 2, 3], vec![2, 1, 3]]).unwrap();
        let framed = set.framed();
        assert_eq!(framed.signed_rows(), vec![vec![1, 2, 3, 4, 5], vec![1, 3, 2, 4, 5]]);
        assert_eq!(framed.validate_conserved_frame(), Ok(()));
        assert_eq!(framed.original_label(1), None);
        assert_eq!(framed.original_label(2), Some(1));
        assert_eq!(framed.original_label(5), None);
    }

    #[test]
    fn common_interval_checks() {
        let set = PermutationSet::from_unsigned(&[
            (1..=9).collect(),
            vec![4, 2, 3, 1, 7, 8, 9, 6, 5],
            vec![5, 6, 1, 3, 2, 4, 9, 8, 7],
        ])
        .unwrap();
        assert!(set.is_common_interval(iv(7, 9)));
        assert!(!set.is_common_interval(iv(5, 9)));
        for k in 1..=9 {
            assert!(set.is_common_interval(iv(k, k)));
        }
        assert!(set.is_common_interval(iv(1, 9)));
    }

    #[test]
    fn conserved_interval_checks() {
        let set =
            PermutationSet::from_signed(&[(1..=9).collect(), vec![1, -3, -2, 4, 5, -8, -7, -6, 9]])
                .unwrap();
        assert!(set.is_conserved_interval(iv(6, 8)));
        assert!(!set.is_conserved_interval(iv(5, 8)));
        assert!(set.is_common_interval(iv(5, 8)));
        for k in 1..=9 {
            assert!(set.is_conserved_interval(iv(k, k)));
        }
    }

    #[test]
    fn overlap_relation() {
        assert!(iv(1, 3).overlaps(&iv(2, 4)));
        assert!(iv(1, 3).overlaps(&iv(3, 4)));
        assert!(!iv(1, 3).overlaps(&iv(4, 5)));
        assert!(!iv(1, 4).overlaps(&iv(2, 3)));
        assert!(!iv(1, 4).overlaps(&iv(1, 4)));
    }
}
