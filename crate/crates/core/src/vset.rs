//! Subsets of a ground set `[n] = {1, ..., n}`.
//!
//! A [`VSet`] is a bitset: element `e` lives at bit `e - 1`. Ground sets of
//! up to 64 points fit in a single inline word; larger ground sets spill to
//! the heap. Ordering is colexicographic, which for bitsets is the numeric
//! order of the underlying integer.

use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 1]>;

#[inline]
fn word_count(n: u32) -> usize {
    (n as usize).div_ceil(64)
}

/// A subset of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VSet {
    n: u32,
    bits: Words,
}

impl VSet {
    /// The empty subset of `[n]`.
    pub fn empty(n: u32) -> Self {
        let mut bits = Words::new();
        bits.resize(word_count(n), 0);
        VSet { n, bits }
    }

    /// `[m]` as a subset of `[n]`.
    pub fn prefix(n: u32, m: u32) -> Result<Self> {
        if m > n {
            return Err(Error::ElementOutOfRange { element: m, n });
        }
        let mut s = VSet::empty(n);
        for e in 1..=m {
            s.set_bit(e);
        }
        Ok(s)
    }

    /// Builds a set from labels in `1..=n`. Duplicates are rejected.
    pub fn new<I: IntoIterator<Item = u32>>(n: u32, elements: I) -> Result<Self> {
        let mut s = VSet::empty(n);
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            if s.contains(e) {
                return Err(Error::DuplicateElement(e));
            }
            s.set_bit(e);
        }
        Ok(s)
    }

    /// Builds a set from a bitmask (bit `i` is element `i + 1`).
    pub fn from_mask(n: u32, mask: u64) -> Result<Self> {
        if n < 64 && mask >> n != 0 {
            let element = 64 - mask.leading_zeros();
            return Err(Error::ElementOutOfRange { element, n });
        }
        let mut s = VSet::empty(n);
        if let Some(w) = s.bits.first_mut() {
            *w = mask;
        }
        Ok(s)
    }

    /// The bitmask of the set when `n <= 64`.
    pub fn as_mask(&self) -> Option<u64> {
        match self.bits.len() {
            0 => Some(0),
            1 => Some(self.bits[0]),
            _ => None,
        }
    }

    #[inline]
    fn set_bit(&mut self, e: u32) {
        let i = (e - 1) as usize;
        self.bits[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn clear_bit(&mut self, e: u32) {
        let i = (e - 1) as usize;
        self.bits[i / 64] &= !(1 << (i % 64));
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, e: u32) -> bool {
        if e == 0 || e > self.n {
            return false;
        }
        let i = (e - 1) as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> Elements<'_> {
        Elements {
            words: &self.bits,
            word: 0,
            current: self.bits.first().copied().unwrap_or(0),
        }
    }

    /// Largest element, if any.
    pub fn max_element(&self) -> Option<u32> {
        self.bits
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| (i as u32) * 64 + 64 - w.leading_zeros())
    }

    fn zip_with(&self, other: &VSet, f: impl Fn(u64, u64) -> u64) -> VSet {
        debug_assert_eq!(self.n, other.n, "ground sets differ");
        let bits = self
            .bits
            .iter()
            .zip(other.bits.iter().chain(core::iter::repeat(&0)))
            .map(|(&a, &b)| f(a, b))
            .collect();
        VSet { n: self.n, bits }
    }

    pub fn intersection(&self, other: &VSet) -> VSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &VSet) -> VSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &VSet) -> VSet {
        self.zip_with(other, |a, b| a & !b)
    }

    /// Whether the two sets share an element.
    pub fn meets(&self, other: &VSet) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .any(|(&a, &b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &VSet) -> bool {
        !self.meets(other)
    }

    /// Size of the intersection without materializing it.
    pub fn intersection_len(&self, other: &VSet) -> usize {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .map(|(&a, &b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VSet) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter().chain(core::iter::repeat(&0)))
            .all(|(&a, &b)| a & !b == 0)
    }

    /// Strict containment.
    pub fn is_proper_subset(&self, other: &VSet) -> bool {
        self.is_subset(other) && self != other
    }

    /// Copy with `e` added.
    pub fn with(&self, e: u32) -> Result<VSet> {
        if e == 0 || e > self.n {
            return Err(Error::ElementOutOfRange {
                element: e,
                n: self.n,
            });
        }
        let mut s = self.clone();
        s.set_bit(e);
        Ok(s)
    }

    /// Copy with `e` removed (no-op when absent).
    pub fn without(&self, e: u32) -> VSet {
        let mut s = self.clone();
        if self.contains(e) {
            s.clear_bit(e);
        }
        s
    }

    /// The same elements over a larger ground set.
    pub fn extend_ground(&self, n: u32) -> Result<VSet> {
        if n < self.n {
            return Err(Error::GroundMismatch {
                expected: self.n,
                found: n,
            });
        }
        let mut bits = self.bits.clone();
        bits.resize(word_count(n), 0);
        Ok(VSet { n, bits })
    }

    /// Lexicographic order on increasing element sequences.
    pub fn lex_cmp(&self, other: &VSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl Ord for VSet {
    /// Ground size first, then colex order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for VSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Iterator over the elements of a [`VSet`] in increasing order.
pub struct Elements<'a> {
    words: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Elements<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some(self.word as u32 * 64 + tz + 1);
            }
            self.word += 1;
            self.current = *self.words.get(self.word)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn s(n: u32, e: &[u32]) -> VSet {
        VSet::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        assert_eq!(
            VSet::new(3, [1, 4]),
            Err(Error::ElementOutOfRange { element: 4, n: 3 })
        );
        assert_eq!(
            VSet::new(3, [0]),
            Err(Error::ElementOutOfRange { element: 0, n: 3 })
        );
        assert_eq!(VSet::new(3, [2, 2]), Err(Error::DuplicateElement(2)));
        assert!(VSet::from_mask(3, 0b1000).is_err());
    }

    #[test]
    fn colex_order() {
        let mut v = [s(4, &[1, 4]), s(4, &[2, 3]), s(4, &[1, 2]), s(4, &[1, 3])];
        v.sort();
        assert_eq!(
            v,
            [s(4, &[1, 2]), s(4, &[1, 3]), s(4, &[2, 3]), s(4, &[1, 4])]
        );
        v.sort_by(VSet::lex_cmp);
        assert_eq!(
            v,
            [s(4, &[1, 2]), s(4, &[1, 3]), s(4, &[1, 4]), s(4, &[2, 3])]
        );
    }

    #[test]
    fn wide_ground_sets() {
        let a = s(130, &[1, 64, 65, 130]);
        let b = s(130, &[64, 100, 130]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection(&b), s(130, &[64, 130]));
        assert_eq!(a.iter().collect::<Vec<_>>(), [1, 64, 65, 130]);
        assert_eq!(a.max_element(), Some(130));
        assert!(a.as_mask().is_none());
        assert!(a.meets(&b));
        assert!(s(130, &[64]).is_subset(&b));
        assert!(s(130, &[1]) < s(130, &[65]));
    }

    #[test]
    fn set_algebra() {
        let a = s(6, &[1, 2, 3]);
        let b = s(6, &[3, 4]);
        assert_eq!(a.union(&b), s(6, &[1, 2, 3, 4]));
        assert_eq!(a.difference(&b), s(6, &[1, 2]));
        assert_eq!(a.intersection_len(&b), 1);
        assert!(s(6, &[1, 2]).is_proper_subset(&a));
        assert!(!a.is_proper_subset(&a));
        assert_eq!(a.without(2), s(6, &[1, 3]));
        assert_eq!(a.with(6).unwrap(), s(6, &[1, 2, 3, 6]));
        assert_eq!(VSet::prefix(6, 3).unwrap(), a);
        assert_eq!(a.extend_ground(7).unwrap().ground_size(), 7);
        assert_eq!(alloc::format!("{a}"), "{1,2,3}");
    }
}
