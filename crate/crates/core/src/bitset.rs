//! Fixed-universe bitsets over canonical element indices.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

const WORD: usize = 64;

/// A subset of `0..universe`, stored as packed words.
///
/// Ordering is canonical: smaller sets first, then lexicographic on the
/// sorted member lists. Every lattice listing in the crate uses it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for x in 0..universe {
            set.insert(x);
        }
        set
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(x);
        set
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut set = Self::empty(universe);
        for x in items {
            set.insert(x);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        let (w, b) = (x / WORD, x % WORD);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        if x < self.universe {
            self.words[x / WORD] &= !(1 << (x % WORD));
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / WORD] & (1 << (x % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// True when the set is exactly `{0}`.
    pub fn is_zero(&self) -> bool {
        self.contains(0) && self.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &ElemSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> ElemSet {
        let full = ElemSet::full(self.universe);
        full.difference(self)
    }

    fn zip_with(&self, other: &ElemSet, f: impl Fn(u64, u64) -> u64) -> ElemSet {
        debug_assert_eq!(self.universe, other.universe);
        ElemSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

pub struct Iter<'a> {
    set: &'a ElemSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * WORD + b);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a ElemSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_membership() {
        let mut s = ElemSet::empty(70);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(65);
        assert!(s.contains(65));
        assert!(!s.contains(64));
        assert!(!s.contains(700));
        assert_eq!(s.to_vec(), vec![3, 65]);
        assert_eq!(s.len(), 2);
        s.remove(3);
        assert_eq!(s.to_vec(), vec![65]);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let a = ElemSet::from_iter(8, [0, 4]);
        let b = ElemSet::from_iter(8, [0, 2]);
        let c = ElemSet::from_iter(8, [0]);
        let mut v = vec![a.clone(), b.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, b, a]);
    }

    #[test]
    fn set_algebra() {
        let a = ElemSet::from_iter(10, [0, 1, 2, 3]);
        let b = ElemSet::from_iter(10, [2, 3, 4]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2, 3]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 1]);
        assert_eq!(b.complement().len(), 7);
        assert!(ElemSet::from_iter(10, [2]).is_subset(&b));
        assert!(!a.is_subset(&b));
        assert!(ElemSet::singleton(10, 0).is_zero());
        assert_eq!(format!("{a}"), "{0,1,2,3}");
    }
}
