//! Fixed-length bit vectors over the examples of a data set.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD: usize = 64;

/// A set of example indices, one bit per example.
///
/// All binary operations require both operands to have the same length; this
/// is checked with a debug assertion only, since every set in a mining run is
/// derived from the same data set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverageSet {
    words: Vec<u64>,
    len: usize,
}

impl CoverageSet {
    /// An empty set over `len` examples.
    pub fn empty(len: usize) -> Self {
        CoverageSet {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    /// The set containing every example index below `len`.
    pub fn full(len: usize) -> Self {
        let mut set = CoverageSet {
            words: vec![u64::MAX; len.div_ceil(WORD)],
            len,
        };
        set.trim();
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from a predicate evaluated on every index.
    pub fn from_fn<F: FnMut(usize) -> bool>(len: usize, mut f: F) -> Self {
        let mut set = Self::empty(len);
        for i in 0..len {
            if f(i) {
                set.insert(i);
            }
        }
        set
    }

    // clear the padding bits of the last word
    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of examples the set ranges over (not the cardinality).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] & (1u64 << (i % WORD)) != 0
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] |= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] &= !(1u64 << (i % WORD));
    }

    /// Cardinality.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|self ∩ other|` without allocating.
    pub fn intersection_count(&self, other: &CoverageSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|self ∪ other|` without allocating.
    pub fn union_count(&self, other: &CoverageSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn and(&self, other: &CoverageSet) -> CoverageSet {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    pub fn or(&self, other: &CoverageSet) -> CoverageSet {
        let mut out = self.clone();
        out.or_assign(other);
        out
    }

    pub fn and_not(&self, other: &CoverageSet) -> CoverageSet {
        let mut out = self.clone();
        out.and_not_assign(other);
        out
    }

    pub fn and_assign(&mut self, other: &CoverageSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &CoverageSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &CoverageSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &CoverageSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Ascending iterator over member indices.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

impl fmt::Debug for CoverageSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

impl<'a> IntoIterator for &'a CoverageSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn explicit(bits: u64, len: usize) -> BTreeSet<usize> {
        (0..len).filter(|i| bits >> i & 1 == 1).collect()
    }

    fn from_bits(bits: u64, len: usize) -> CoverageSet {
        CoverageSet::from_fn(len, |i| bits >> i & 1 == 1)
    }

    #[test]
    fn full_has_no_padding_bits() {
        for len in [0, 1, 63, 64, 65, 130] {
            let s = CoverageSet::full(len);
            assert_eq!(s.count(), len);
            assert_eq!(s.iter().count(), len);
        }
    }

    #[test]
    fn algebra_matches_explicit_sets_exhaustively_small() {
        // every pair of 6-bit patterns
        let len = 6;
        for a in 0u64..64 {
            for b in 0u64..64 {
                let (sa, sb) = (from_bits(a, len), from_bits(b, len));
                let (ea, eb) = (explicit(a, len), explicit(b, len));
                let and: BTreeSet<_> = ea.intersection(&eb).copied().collect();
                let or: BTreeSet<_> = ea.union(&eb).copied().collect();
                let diff: BTreeSet<_> = ea.difference(&eb).copied().collect();
                assert_eq!(sa.and(&sb).iter().collect::<BTreeSet<_>>(), and);
                assert_eq!(sa.or(&sb).iter().collect::<BTreeSet<_>>(), or);
                assert_eq!(sa.and_not(&sb).iter().collect::<BTreeSet<_>>(), diff);
                assert_eq!(sa.intersection_count(&sb), and.len());
                assert_eq!(sa.union_count(&sb), or.len());
                assert_eq!(sa.is_subset(&sb), ea.is_subset(&eb));
            }
        }
    }

    #[test]
    fn insert_remove_contains() {
        let mut s = CoverageSet::empty(200);
        s.insert(0);
        s.insert(64);
        s.insert(199);
        assert!(s.contains(64) && s.contains(199) && !s.contains(1));
        s.remove(64);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 199]);
        assert!(!s.is_empty());
        assert!(CoverageSet::empty(10).is_empty());
    }
}
