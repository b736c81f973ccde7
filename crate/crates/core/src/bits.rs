//! Vertex bitsets: a single-word set for graphs on at most 64 vertices and a
//! growable multi-word set for the wide colourings.

use std::fmt;

/// Operations shared by both bitset flavours so the search kernels can be
/// written once.
pub trait VertexBits: Clone + Eq + std::hash::Hash + Ord + fmt::Debug + Send + Sync {
    /// Empty set able to hold vertices `0..n`.
    fn empty(n: usize) -> Self;
    /// The full range `0..n`.
    fn full(n: usize) -> Self;
    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
    fn contains(&self, v: usize) -> bool;
    fn intersect_with(&mut self, other: &Self);
    fn difference_with(&mut self, other: &Self);
    fn union_with(&mut self, other: &Self);
    fn count(&self) -> usize;
    fn first(&self) -> Option<usize>;
    fn is_empty(&self) -> bool;
    fn intersects(&self, other: &Self) -> bool;
    fn is_subset(&self, other: &Self) -> bool;
    fn to_vec(&self) -> Vec<usize>;

    fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    fn intersection_count(&self, other: &Self) -> usize {
        self.intersection(other).count()
    }
}

/// Subset of `0..64` packed into one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < 64);
        VertexSet(1u64 << v)
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn range(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = VertexSet(0);
        for v in it {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element strictly below the 64-bit range, if any.
    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    #[inline]
    pub fn and(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    #[inline]
    pub fn or(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    #[inline]
    pub fn minus(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

impl VertexBits for VertexSet {
    fn empty(n: usize) -> Self {
        debug_assert!(n <= 64);
        VertexSet(0)
    }
    fn full(n: usize) -> Self {
        VertexSet::range(n)
    }
    fn insert(&mut self, v: usize) {
        VertexSet::insert(self, v)
    }
    fn remove(&mut self, v: usize) {
        VertexSet::remove(self, v)
    }
    fn contains(&self, v: usize) -> bool {
        VertexSet::contains(*self, v)
    }
    fn intersect_with(&mut self, other: &Self) {
        self.0 &= other.0
    }
    fn difference_with(&mut self, other: &Self) {
        self.0 &= !other.0
    }
    fn union_with(&mut self, other: &Self) {
        self.0 |= other.0
    }
    fn count(&self) -> usize {
        self.len()
    }
    fn first(&self) -> Option<usize> {
        VertexSet::first(*self)
    }
    fn is_empty(&self) -> bool {
        self.0 == 0
    }
    fn intersects(&self, other: &Self) -> bool {
        self.0 & other.0 != 0
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.is_subset_of(*other)
    }
    fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
    fn intersection_count(&self, other: &Self) -> usize {
        (self.0 & other.0).count_ones() as usize
    }
}

/// Multi-word bitset over `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet { words: vec![u64::MAX; len.div_ceil(64)], len };
        s.trim();
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = BitSet::new(len);
        for v in it {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Capacity (vertex range), not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.len && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.len, "vertex {v} outside bitset range {}", self.len);
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.len {
            self.words[v / 64] &= !(1u64 << (v % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> BitSetIter<'_> {
        BitSetIter { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn complement(&self) -> BitSet {
        let mut s = BitSet { words: self.words.iter().map(|w| !w).collect(), len: self.len };
        s.trim();
        s
    }

    pub fn to_vertex_set(&self) -> Option<VertexSet> {
        if self.len > 64 && self.words[1..].iter().any(|&w| w != 0) {
            return None;
        }
        Some(VertexSet(self.words.first().copied().unwrap_or(0)))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct BitSetIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for BitSetIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl VertexBits for BitSet {
    fn empty(n: usize) -> Self {
        BitSet::new(n)
    }
    fn full(n: usize) -> Self {
        BitSet::full(n)
    }
    fn insert(&mut self, v: usize) {
        BitSet::insert(self, v)
    }
    fn remove(&mut self, v: usize) {
        BitSet::remove(self, v)
    }
    fn contains(&self, v: usize) -> bool {
        BitSet::contains(self, v)
    }
    fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }
    fn difference_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }
    fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
    fn count(&self) -> usize {
        BitSet::count(self)
    }
    fn first(&self) -> Option<usize> {
        BitSet::first(self)
    }
    fn is_empty(&self) -> bool {
        BitSet::is_empty(self)
    }
    fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
    fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
    fn intersection_count(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_set_basics() {
        let s = VertexSet::from_vertices([0, 5, 63]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(63));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5, 63]);
        assert_eq!(VertexSet::range(64).len(), 64);
        assert!(s.without(5).is_subset_of(s));
    }

    #[test]
    fn wide_set_trims_and_iterates() {
        let mut s = BitSet::full(130);
        assert_eq!(s.count(), 130);
        s.remove(0);
        s.remove(129);
        assert_eq!(s.first(), Some(1));
        assert_eq!(s.iter().last(), Some(128));
        let c = s.complement();
        assert_eq!(c.to_vec(), vec![0, 129]);
        assert!(BitSet::from_vertices(130, [3]).to_vertex_set().is_some());
        assert!(BitSet::from_vertices(130, [100]).to_vertex_set().is_none());
    }
}
