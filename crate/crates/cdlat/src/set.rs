//! Bitsets over group element indices.

use std::cmp::Ordering;
use std::fmt;

/// A set of group elements, stored as a bitset over the element indices
/// `0..universe` with a cached population count.
///
/// Subgroups, centralizers, centers and cosets are all `ElementSet`s; the
/// universe is always the order of the ambient group. The set itself does
/// not know whether it is a subgroup — operations that require one say so.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
    count: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
            count: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![!0u64; universe.div_ceil(64)];
        if !universe.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (universe % 64)) - 1;
            }
        }
        ElementSet {
            universe,
            words,
            count: universe,
        }
    }

    pub fn singleton(universe: usize, index: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(index);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for index in indices {
            set.insert(index);
        }
        set
    }

    /// Size of the ambient group.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of elements in the set (the subgroup order, for subgroups).
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        debug_assert!(index < self.universe);
        self.words[index / 64] >> (index % 64) & 1 == 1
    }

    /// Inserts an element; returns `true` if it was not already present.
    pub fn insert(&mut self, index: usize) -> bool {
        debug_assert!(index < self.universe);
        let word = &mut self.words[index / 64];
        let bit = 1u64 << (index % 64);
        if *word & bit == 0 {
            *word |= bit;
            self.count += 1;
            true
        } else {
            false
        }
    }

    /// Iterates the elements in ascending index order.
    pub fn iter(&self) -> Indices<'_> {
        Indices {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset_of(&self, other: &Self) -> bool {
        self.count < other.count && self.is_subset_of(other)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        let count = words.iter().map(|w| w.count_ones() as usize).sum();
        ElementSet {
            universe: self.universe,
            words,
            count,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        let count = words.iter().map(|w| w.count_ones() as usize).sum();
        ElementSet {
            universe: self.universe,
            words,
            count,
        }
    }
}

/// Canonical order: by size, then lexicographically by ascending element
/// list. This is the sort key for subgroup lattices, so every downstream
/// index and report is reproducible.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.count.cmp(&other.count).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                if a != b {
                    let low = (a ^ b).trailing_zeros();
                    // The set containing the first differing index has the
                    // lexicographically smaller element list.
                    return if a >> low & 1 == 1 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Indices<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Indices<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
        let low = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_index * 64 + low)
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Indices<'a>;

    fn into_iter(self) -> Indices<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_roundtrip() {
        let mut set = ElementSet::empty(130);
        for i in [0, 1, 63, 64, 65, 127, 128, 129] {
            assert!(set.insert(i));
            assert!(!set.insert(i));
        }
        assert_eq!(set.len(), 8);
        let back: Vec<usize> = set.iter().collect();
        assert_eq!(back, vec![0, 1, 63, 64, 65, 127, 128, 129]);
    }

    #[test]
    fn full_and_empty() {
        let full = ElementSet::full(70);
        assert_eq!(full.len(), 70);
        assert!(full.contains(69));
        assert!(ElementSet::empty(70).is_subset_of(&full));
        assert!(ElementSet::empty(70).is_empty());
    }

    #[test]
    fn subset_relations() {
        let small = ElementSet::from_indices(10, [0, 3]);
        let big = ElementSet::from_indices(10, [0, 3, 7]);
        assert!(small.is_subset_of(&big));
        assert!(small.is_proper_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        assert!(small.is_subset_of(&small));
        assert!(!small.is_proper_subset_of(&small));
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let a = ElementSet::from_indices(8, [0, 1]);
        let b = ElementSet::from_indices(8, [0, 2]);
        let c = ElementSet::from_indices(8, [7]);
        assert!(c < a, "smaller sets sort first");
        assert!(a < b, "{{0,1}} precedes {{0,2}}");
        let d = ElementSet::from_indices(8, [1, 2]);
        assert!(b < d, "{{0,2}} precedes {{1,2}}");
    }

    #[test]
    fn meet_and_union() {
        let a = ElementSet::from_indices(6, [0, 1, 2]);
        let b = ElementSet::from_indices(6, [0, 2, 4]);
        assert_eq!(
            a.intersection(&b).iter().collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert_eq!(
            a.union(&b).iter().collect::<Vec<_>>(),
            vec![0, 1, 2, 4]
        );
    }
}
