use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A subset of `{0, .., n-1}` backed by a word bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self { n, words: vec![0; word_count(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self { n, words: vec![u64::MAX; word_count(n)] };
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in items {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Builds a set from the low `n` bits of `mask` (requires `n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "from_mask needs n <= 64");
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// The set as a single word, if the universe fits in one.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside universe {}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn complement(&self) -> Self {
        let mut s = Self { n: self.n, words: self.words.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        Self { n: self.n, words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect() }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// `|self ∩ other|` without allocating.
    #[inline]
    pub fn intersection_len(&self, other: &Self) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection_len(other) == 0
    }

    /// Lexicographic order on the sorted member tuples.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Deserializes from a member list; the universe is taken as `max + 1` and
/// callers re-embed the set into their graph's order.
impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(deserializer)?;
        let n = items.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_indices(n, items).expect("universe covers every member"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let s = VertexSet::from_indices(70, [0, 3, 65]).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(65) && !s.contains(64));
        assert_eq!(s.complement().len(), 67);
        assert_eq!(s.to_vec(), vec![0, 3, 65]);
        assert!(VertexSet::from_indices(3, [3]).is_err());
        assert!(VertexSet::full(0).is_empty());
    }

    #[test]
    fn lex_order() {
        let a = VertexSet::from_indices(5, [0, 4]).unwrap();
        let b = VertexSet::from_indices(5, [1, 2]).unwrap();
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
    }

    proptest! {
        #[test]
        fn complement_is_involution(n in 0usize..150, seed in any::<u64>()) {
            let members = (0..n).filter(|i| (seed.rotate_left(*i as u32 % 64) >> 3) & 1 == 1);
            let s = VertexSet::from_indices(n, members).unwrap();
            prop_assert_eq!(s.complement().complement(), s.clone());
            prop_assert_eq!(s.len() + s.complement().len(), n);
            prop_assert!(s.is_disjoint(&s.complement()));
        }
    }
}
