//! Fixed-length membership bit-vectors over element indices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A set of element indices `0..len`, stored as packed 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    len: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i as u32);
        }
        s
    }

    pub fn from_indices(len: usize, items: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty(len);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// Length of the underlying universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let x = x as usize;
        x < self.len && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Inserts `x`, returning `true` when it was not already present.
    #[inline]
    pub fn insert(&mut self, x: u32) -> bool {
        let x = x as usize;
        assert!(x < self.len, "element {x} outside universe {}", self.len);
        let w = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: u32) {
        let x = x as usize;
        if x < self.len {
            self.words[x / 64] &= !(1u64 << (x % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Position of `x` among the members in ascending order.
    pub fn rank(&self, x: u32) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        let x = x as usize;
        let full: usize = self.words[..x / 64]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum();
        let partial = (self.words[x / 64] & ((1u64 << (x % 64)) - 1)).count_ones() as usize;
        Some(full + partial)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            words: &self.words,
            word: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Rebuilds a set from raw words (used by on-disk caches).
    pub fn from_words(len: usize, words: Vec<u64>) -> Option<Self> {
        if words.len() != len.div_ceil(64) {
            return None;
        }
        let s = Self { len, words };
        if s.iter().any(|x| x as usize >= len) {
            return None;
        }
        Some(s)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Members<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some((self.word * 64) as u32 + tz);
            }
            self.word += 1;
            if self.word >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_iteration_order() {
        let s = ElementSet::from_indices(150, [0, 3, 64, 65, 149]);
        let members = s.to_vec();
        assert_eq!(members, [0, 3, 64, 65, 149]);
        for (i, &x) in members.iter().enumerate() {
            assert_eq!(s.rank(x), Some(i));
        }
        assert_eq!(s.rank(4), None);
        assert_eq!(s.count(), 5);
    }

    #[test]
    fn subset_and_ops() {
        let a = ElementSet::from_indices(10, [1, 2]);
        let b = ElementSet::from_indices(10, [1, 2, 7]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.union(&b), b);
        assert_eq!(a.intersection(&b), a);
        assert!(ElementSet::empty(0).is_empty());
    }
}
