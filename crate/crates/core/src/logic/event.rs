use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of a finite, indexed universe.
///
/// Over a [`VariableTable`](super::VariableTable) the universe is the set of
/// interpretations and an event is the model set of some formula; over a
/// labeled domain it is a plain crisp subset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    bits: FixedBitSet,
}

impl Event {
    pub fn empty(size: usize) -> Self {
        Event { bits: FixedBitSet::with_capacity(size) }
    }

    pub fn full(size: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(size);
        bits.insert_range(..);
        Event { bits }
    }

    pub fn from_indices(size: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut event = Event::empty(size);
        for i in indices {
            event.insert(i);
        }
        event
    }

    /// Members are the positions where `pred` holds.
    pub fn from_predicate(size: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        Self::from_indices(size, (0..size).filter(|&i| pred(i)))
    }

    /// The `mask`-th subset of the universe (bit `i` of `mask` = index `i`).
    /// Only meaningful for universes of at most 64 elements.
    pub fn from_mask(size: usize, mask: u64) -> Self {
        debug_assert!(size <= 64);
        Self::from_predicate(size, |i| mask >> i & 1 == 1)
    }

    pub fn universe_size(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.bits.len(), "index {index} outside universe");
        self.bits.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        self.bits.set(index, false);
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe_size()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn complement(&self) -> Event {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Event { bits }
    }

    pub fn union(&self, other: &Event) -> Event {
        self.check_universe(other);
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Event { bits }
    }

    pub fn intersection(&self, other: &Event) -> Event {
        self.check_universe(other);
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Event { bits }
    }

    pub fn difference(&self, other: &Event) -> Event {
        self.check_universe(other);
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Event { bits }
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.check_universe(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn intersects(&self, other: &Event) -> bool {
        self.check_universe(other);
        !self.bits.is_disjoint(&other.bits)
    }

    fn check_universe(&self, other: &Event) {
        assert_eq!(
            self.universe_size(),
            other.universe_size(),
            "events live in different universes"
        );
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = Event::from_indices(5, [0, 1, 2]);
        let b = Event::from_indices(5, [2, 3]);
        assert_eq!(a.union(&b), Event::from_indices(5, [0, 1, 2, 3]));
        assert_eq!(a.intersection(&b), Event::from_indices(5, [2]));
        assert_eq!(a.complement(), Event::from_indices(5, [3, 4]));
        assert_eq!(a.difference(&b), Event::from_indices(5, [0, 1]));
        assert!(Event::from_indices(5, [1]).is_subset(&a));
        assert!(Event::full(5).is_full());
        assert!(Event::empty(5).complement().is_full());
        assert_eq!(Event::from_mask(4, 0b1010), Event::from_indices(4, [1, 3]));
    }

    #[test]
    #[should_panic(expected = "different universes")]
    fn mixing_universes_panics() {
        let _ = Event::empty(3).union(&Event::empty(4));
    }
}
