use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of `0..universe`, stored as a dense bitset.
///
/// Two sets are only comparable when they share a universe; every set built
/// from the same [`Graph`](super::Graph) does.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet(bits)
    }

    pub fn from_slice(universe: usize, vertices: &[usize]) -> Self {
        let mut s = Self::new(universe);
        for &v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        Self::from_slice(universe, &[v])
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: usize) {
        self.0.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.0.len() {
            self.0.set(v, false);
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.minimum()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.0.intersection_count(&other.0)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.0.union_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        self.0.difference_with(&other.0);
    }

    pub fn without(&self, v: usize) -> VertexSet {
        let mut out = self.clone();
        out.remove(v);
        out
    }

    pub fn with(&self, v: usize) -> VertexSet {
        let mut out = self.clone();
        out.insert(v);
        out
    }

    /// Smallest element of `self \ other`.
    pub fn first_not_in(&self, other: &VertexSet) -> Option<usize> {
        self.iter().find(|&v| !other.contains(v))
    }
}

/// Lexicographic order on the sorted element lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_slice(8, &[1, 2, 5]);
        let b = VertexSet::from_slice(8, &[2, 5, 7]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2, 5]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 5, 7]);
        assert_eq!(a.difference(&b).to_vec(), vec![1]);
        assert_eq!(a.intersection_len(&b), 2);
        assert!(a.intersection(&b).is_subset(&a));
        assert_eq!(a.first_not_in(&b), Some(1));
        assert_eq!(VertexSet::full(3).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn order_is_lexicographic() {
        let a = VertexSet::from_slice(8, &[0, 7]);
        let b = VertexSet::from_slice(8, &[1]);
        let c = VertexSet::from_slice(8, &[0]);
        assert!(a < b);
        assert!(c < a);
    }
}
