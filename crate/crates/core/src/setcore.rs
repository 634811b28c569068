//! Ground sets, subsets of `{1..n}` packed into one machine word, and
//! canonically ordered set families.
//!
//! Element labels are 1-based everywhere in the public API. Bit `i - 1` of an
//! [`ElementSet`] stands for element `i`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest ground set an [`ElementSet`] can represent.
pub const MAX_GROUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("ground set size {0} outside 1..={MAX_GROUND}")]
    GroundSize(usize),
    #[error("element {element} is not in the ground set {{1..{n}}}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("cannot take {k}-subsets of a {n}-element ground set")]
    SubsetSize { k: usize, n: usize },
    #[error("sets live on different ground sets (n={left} and n={right})")]
    GroundMismatch { left: usize, right: usize },
    #[error("duplicate member `{0}` in family")]
    DuplicateMember(ElementSet),
}

/// The labeled ground set `{1..n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    n: u8,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self, SetError> {
        if n == 0 || n > MAX_GROUND {
            return Err(SetError::GroundSize(n));
        }
        Ok(Self { n: n as u8 })
    }

    #[inline]
    pub fn size(self) -> usize {
        self.n as usize
    }

    /// Bit mask with one bit per element.
    #[inline]
    pub fn mask(self) -> u64 {
        if self.n as usize == MAX_GROUND {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn empty_set(self) -> ElementSet {
        ElementSet { bits: 0, n: self.n }
    }

    pub fn full_set(self) -> ElementSet {
        ElementSet {
            bits: self.mask(),
            n: self.n,
        }
    }

    /// Builds a set from 1-based labels.
    pub fn set_of<I: IntoIterator<Item = usize>>(self, elements: I) -> Result<ElementSet, SetError> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > self.size() {
                return Err(SetError::ElementOutOfRange {
                    element: e,
                    n: self.size(),
                });
            }
            bits |= 1 << (e - 1);
        }
        Ok(ElementSet { bits, n: self.n })
    }

    pub fn set_from_bits(self, bits: u64) -> Result<ElementSet, SetError> {
        if bits & !self.mask() != 0 {
            let element = (bits & !self.mask()).trailing_zeros() as usize + 1;
            return Err(SetError::ElementOutOfRange {
                element,
                n: self.size(),
            });
        }
        Ok(ElementSet { bits, n: self.n })
    }

    #[inline]
    pub(crate) fn set_unchecked(self, bits: u64) -> ElementSet {
        debug_assert_eq!(bits & !self.mask(), 0);
        ElementSet { bits, n: self.n }
    }

    /// All `k`-subsets in canonical (lexicographic) order.
    pub fn k_subsets(self, k: usize) -> Result<KSubsets, SetError> {
        if k > self.size() {
            return Err(SetError::SubsetSize { k, n: self.size() });
        }
        Ok(KSubsets {
            ground: self,
            positions: (0..k).collect(),
            done: false,
        })
    }

    /// Subsets whose cardinality lies in `sizes`, smallest cardinality first.
    pub fn subsets_sized(self, sizes: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = ElementSet> {
        let (lo, hi) = (*sizes.start(), (*sizes.end()).min(self.size()));
        (lo..=hi).flat_map(move |k| self.k_subsets(k).expect("k bounded by n"))
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{1..{}}}", self.n)
    }
}

/// A subset of a ground set `{1..n}`.
///
/// Sets are ordered by cardinality first and then lexicographically on their
/// sorted element lists, so `{3} < {1 2} < {1 3} < {2 3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: u64,
    n: u8,
}

impl ElementSet {
    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground(self) -> GroundSet {
        GroundSet { n: self.n }
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Membership of a 1-based label.
    #[inline]
    pub fn contains(self, element: usize) -> bool {
        element >= 1 && element <= self.n as usize && self.bits >> (element - 1) & 1 == 1
    }

    /// Sorted 1-based labels.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(e + 1)
            }
        })
    }

    #[inline]
    pub fn is_subset(self, other: ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn union(self, other: ElementSet) -> ElementSet {
        debug_assert_eq!(self.n, other.n);
        ElementSet {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn intersection(self, other: ElementSet) -> ElementSet {
        debug_assert_eq!(self.n, other.n);
        ElementSet {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    #[inline]
    pub fn difference(self, other: ElementSet) -> ElementSet {
        debug_assert_eq!(self.n, other.n);
        ElementSet {
            bits: self.bits & !other.bits,
            n: self.n,
        }
    }

    /// `self ∪ {element}`; panics on a label outside the ground set.
    pub fn with(self, element: usize) -> ElementSet {
        assert!(
            element >= 1 && element <= self.n as usize,
            "element {element} out of range"
        );
        ElementSet {
            bits: self.bits | 1 << (element - 1),
            n: self.n,
        }
    }

    pub fn without(self, element: usize) -> ElementSet {
        if element == 0 || element > self.n as usize {
            return self;
        }
        ElementSet {
            bits: self.bits & !(1 << (element - 1)),
            n: self.n,
        }
    }

    /// `S \ self`.
    #[inline]
    pub fn complement(self) -> ElementSet {
        ElementSet {
            bits: !self.bits & self.ground().mask(),
            n: self.n,
        }
    }

    /// `|self ∩ other|`, refusing sets from different ground sets.
    pub fn intersection_size(self, other: ElementSet) -> Result<usize, SetError> {
        if self.n != other.n {
            return Err(SetError::GroundMismatch {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        Ok((self.bits & other.bits).count_ones() as usize)
    }

    #[inline]
    pub(crate) fn meet(self, other: ElementSet) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }
}

/// Lexicographic comparison of the sorted element lists of two equal-sized
/// sets: the set owning the smallest element of the symmetric difference comes
/// first.
#[inline]
pub(crate) fn lex_cmp_bits(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        Ordering::Equal
    } else if a & diff & diff.wrapping_neg() != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| lex_cmp_bits(self.bits, other.bits))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Set literal: increasing labels separated by single spaces, `-` for `∅`.
impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("-");
        }
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Lexicographic stream of `k`-subsets, see [`GroundSet::k_subsets`].
#[derive(Debug, Clone)]
pub struct KSubsets {
    ground: GroundSet,
    positions: Vec<usize>,
    done: bool,
}

impl Iterator for KSubsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        if self.done {
            return None;
        }
        let n = self.ground.size();
        let k = self.positions.len();
        let bits = self.positions.iter().fold(0u64, |acc, &p| acc | 1 << p);
        let current = self.ground.set_unchecked(bits);

        // advance to the next combination
        match (0..k).rev().find(|&i| self.positions[i] < n - k + i) {
            None => self.done = true,
            Some(i) => {
                self.positions[i] += 1;
                for j in i + 1..k {
                    self.positions[j] = self.positions[j - 1] + 1;
                }
            }
        }
        Some(current)
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Duplicate-free family of subsets of one ground set, kept in canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<ElementSet>,
}

impl SetFamily {
    pub fn empty(ground: GroundSet) -> Self {
        Self {
            ground,
            members: Vec::new(),
        }
    }

    /// Sorts the members into canonical order; duplicates and sets from a
    /// different ground set are rejected.
    pub fn new<I: IntoIterator<Item = ElementSet>>(ground: GroundSet, sets: I) -> Result<Self, SetError> {
        let mut members: Vec<ElementSet> = sets.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| s.n != ground.n) {
            return Err(SetError::GroundMismatch {
                left: ground.size(),
                right: bad.n as usize,
            });
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(SetError::DuplicateMember(w[0]));
        }
        Ok(Self { ground, members })
    }

    /// Like [`SetFamily::new`] but silently drops duplicates.
    pub(crate) fn collect_dedup<I: IntoIterator<Item = ElementSet>>(ground: GroundSet, sets: I) -> Self {
        let mut members: Vec<ElementSet> = sets.into_iter().collect();
        debug_assert!(members.iter().all(|s| s.n == ground.n));
        members.sort_unstable();
        members.dedup();
        Self { ground, members }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    /// Union of all members.
    pub fn union(&self) -> ElementSet {
        let bits = self.members.iter().fold(0, |acc, s| acc | s.bits);
        self.ground.set_unchecked(bits)
    }

    /// Largest `|X ∩ Y|` over unordered pairs of distinct members, `None` for
    /// fewer than two members.
    pub fn max_pairwise_intersection(&self) -> Option<usize> {
        let m = &self.members;
        (0..m.len())
            .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
            .map(|(i, j)| m[i].meet(m[j]))
            .max()
    }

    /// First pair (in canonical order) whose intersection exceeds `limit`.
    pub fn first_pair_exceeding(&self, limit: usize) -> Option<(ElementSet, ElementSet)> {
        let m = &self.members;
        (0..m.len())
            .flat_map(|i| (i + 1..m.len()).map(move |j| (i, j)))
            .find(|&(i, j)| m[i].meet(m[j]) > limit)
            .map(|(i, j)| (m[i], m[j]))
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn set(n: usize, elems: &[usize]) -> ElementSet {
        g(n).set_of(elems.iter().copied()).unwrap()
    }

    #[test]
    fn ground_bounds() {
        assert_eq!(GroundSet::new(0), Err(SetError::GroundSize(0)));
        assert_eq!(GroundSet::new(65), Err(SetError::GroundSize(65)));
        assert_eq!(g(64).full_set().len(), 64);
        assert_eq!(g(64).full_set().complement(), g(64).empty_set());
    }

    #[test]
    fn k_subset_counts() {
        assert_eq!(g(4).k_subsets(2).unwrap().count(), 6);
        let zero: Vec<_> = g(5).k_subsets(0).unwrap().collect();
        assert_eq!(zero, vec![g(5).empty_set()]);
        let all: Vec<_> = g(5).k_subsets(5).unwrap().collect();
        assert_eq!(all, vec![set(5, &[1, 2, 3, 4, 5])]);
        assert_eq!(g(3).k_subsets(4).unwrap_err(), SetError::SubsetSize { k: 4, n: 3 });
    }

    #[test]
    fn k_subsets_are_lexicographic() {
        let listed: Vec<String> = g(4).k_subsets(2).unwrap().map(|s| s.to_string()).collect();
        assert_eq!(listed, ["1 2", "1 3", "1 4", "2 3", "2 4", "3 4"]);
    }

    #[test]
    fn exhaustive_k_subsets_small_grounds() {
        for n in 1..=8 {
            for k in 0..=n {
                let sets: Vec<_> = g(n).k_subsets(k).unwrap().collect();
                assert_eq!(sets.len() as u64, binomial(n, k));
                assert!(sets.windows(2).all(|w| w[0] < w[1]), "order broken at n={n} k={k}");
                assert!(sets.iter().all(|s| s.len() == k));
            }
        }
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(set(5, &[1, 2, 3]).intersection_size(set(5, &[3, 4, 5])), Ok(1));
        let x = set(5, &[2, 4, 5]);
        assert_eq!(x.intersection_size(x), Ok(3));
        assert_eq!(set(4, &[1, 2]).intersection_size(set(4, &[3, 4])), Ok(0));
        assert_eq!(
            set(4, &[1]).intersection_size(set(5, &[1])),
            Err(SetError::GroundMismatch { left: 4, right: 5 })
        );
    }

    #[test]
    fn complement_examples() {
        assert_eq!(set(4, &[1, 4]).complement(), set(4, &[2, 3]));
        assert_eq!(g(4).empty_set().complement(), set(4, &[1, 2, 3, 4]));
        assert_eq!(set(3, &[1, 2, 3]).complement(), g(3).empty_set());
    }

    #[test]
    fn exhaustive_set_identities() {
        for n in 1..=8 {
            let ground = g(n);
            for a in 0..1u64 << n {
                let a = ground.set_from_bits(a).unwrap();
                assert_eq!(a.complement().complement(), a);
                assert_eq!(a.len() + a.complement().len(), n);
                if n <= 6 {
                    for b in 0..1u64 << n {
                        let b = ground.set_from_bits(b).unwrap();
                        assert_eq!(a.intersection_size(b).unwrap(), a.len() + b.len() - a.union(b).len());
                    }
                }
            }
        }
    }

    #[test]
    fn family_max_pairwise() {
        let f = SetFamily::new(g(5), [set(5, &[1, 2, 3]), set(5, &[3, 4, 5])]).unwrap();
        assert_eq!(f.max_pairwise_intersection(), Some(1));
        let f = SetFamily::new(g(4), [set(4, &[1, 2]), set(4, &[3, 4])]).unwrap();
        assert_eq!(f.max_pairwise_intersection(), Some(0));
        let f = SetFamily::new(g(3), [set(3, &[1, 2, 3])]).unwrap();
        assert_eq!(f.max_pairwise_intersection(), None);
    }

    #[test]
    fn family_rejects_duplicates_and_foreign_sets() {
        let a = set(4, &[1, 2]);
        assert_eq!(SetFamily::new(g(4), [a, a]), Err(SetError::DuplicateMember(a)));
        assert!(SetFamily::new(g(4), [set(5, &[1])]).is_err());
    }

    #[test]
    fn canonical_order_and_literal() {
        let f = SetFamily::new(g(4), [set(4, &[2, 3]), set(4, &[3]), set(4, &[1, 3]), set(4, &[1, 2])]).unwrap();
        let shown: Vec<String> = f.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["3", "1 2", "1 3", "2 3"]);
        assert_eq!(g(4).empty_set().to_string(), "-");
    }

    #[test]
    fn out_of_range_elements() {
        assert_eq!(g(3).set_of([4]), Err(SetError::ElementOutOfRange { element: 4, n: 3 }));
        assert!(g(3).set_of([0]).is_err());
        assert!(g(3).set_from_bits(0b1000).is_err());
    }
}
