//! Element subsets as single machine words.
//!
//! Every lattice in this crate has at most [`MAX_ELEMENTS`] elements, so a
//! subset fits in one `u64` and subset/superset tests, unions and
//! intersections are single word operations.

use crate::lattice::Elem;

/// Hard cap on lattice size: subsets must fit a `u64`.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of the elements of one lattice, as a bit mask over element
/// indices.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full set on a lattice of `n` elements.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: Elem) -> Subset {
        Subset(1u64 << e.index())
    }

    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: Elem) -> bool {
        self.0 & (1u64 << e.index()) != 0
    }

    pub fn insert(&mut self, e: Elem) {
        self.0 |= 1u64 << e.index();
    }

    pub fn remove(&mut self, e: Elem) {
        self.0 &= !(1u64 << e.index());
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn inter(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).minus(self)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    /// Canonical enumeration key: by size first, then by bit pattern.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.0.count_ones(), self.0)
    }

    /// Iterate elements in ascending index order.
    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }
}

impl FromIterator<Elem> for Subset {
    fn from_iter<T: IntoIterator<Item = Elem>>(iter: T) -> Subset {
        let mut s = Subset::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl std::fmt::Debug for Subset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subset{{")?;
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", e.index())?;
            first = false;
        }
        write!(f, "}}")
    }
}

#[derive(Clone)]
pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = Elem;

    fn next(&mut self) -> Option<Elem> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(Elem::new(i))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_ops() {
        let a = Subset::from_bits(0b1011);
        let b = Subset::from_bits(0b0110);
        assert_eq!(a.union(b).bits(), 0b1111);
        assert_eq!(a.inter(b).bits(), 0b0010);
        assert_eq!(a.minus(b).bits(), 0b1001);
        assert!(Subset::from_bits(0b0010).is_subset_of(a));
        assert!(!a.is_subset_of(b));
        assert_eq!(a.len(), 3);
        assert_eq!(a.complement(4).bits(), 0b0100);
    }

    #[test]
    fn full_at_word_boundary() {
        assert_eq!(Subset::full(64).bits(), u64::MAX);
        assert_eq!(Subset::full(1).bits(), 1);
    }

    #[test]
    fn iteration_ascending() {
        let s = Subset::from_bits(0b10101);
        let idx: Vec<usize> = s.iter().map(|e| e.index()).collect();
        assert_eq!(idx, vec![0, 2, 4]);
    }
}
