//! Subsets of `[n]` packed into a single machine word.
//!
//! Elements are 1-based: element `e` lives in bit `e - 1`. Nothing here stores
//! the ground size; callers that care about `[n]` check [`ElementSet::fits`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Largest supported ground size.
pub const MAX_ELEMENT: u32 = 63;

/// A finite subset of `{1, ..., 63}`.
///
/// The `Ord` impl is the canonical family order: cardinality first, then the
/// numeric value of the bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn singleton(e: u32) -> Self {
        debug_assert!(e >= 1 && e <= 64);
        ElementSet(1 << (e - 1))
    }

    /// The interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        let lo = lo.max(1);
        if lo > hi {
            return Self::EMPTY;
        }
        debug_assert!(hi <= 64);
        ElementSet(low_mask(hi) & !low_mask(lo - 1))
    }

    /// `[n]`.
    pub fn full(n: u32) -> Self {
        ElementSet(low_mask(n))
    }

    /// Builds a set from 1-based elements, panicking on element 0 or > 64.
    /// Duplicates are absorbed.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        let mut bits = 0u64;
        for e in elements {
            assert!((1..=64).contains(&e), "element {e} out of range");
            bits |= 1 << (e - 1);
        }
        ElementSet(bits)
    }

    /// Builds a set from 1-based elements, rejecting anything outside `[n]` and
    /// repeated elements.
    pub fn try_from_elements<I: IntoIterator<Item = u32>>(elements: I, n: u32) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > n || e > MAX_ELEMENT {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            let bit = 1 << (e - 1);
            if bits & bit != 0 {
                return Err(Error::DuplicateElement(e));
            }
            bits |= bit;
        }
        Ok(ElementSet(bits))
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, e: u32) -> bool {
        e >= 1 && e <= 64 && self.0 >> (e - 1) & 1 == 1
    }

    #[inline]
    pub const fn with(self, e: u32) -> Self {
        ElementSet(self.0 | 1 << (e - 1))
    }

    #[inline]
    pub const fn without(self, e: u32) -> Self {
        ElementSet(self.0 & !(1 << (e - 1)))
    }

    /// Largest element, `None` for the empty set.
    #[inline]
    pub const fn max(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros())
        }
    }

    #[inline]
    pub const fn min(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() + 1)
        }
    }

    #[inline]
    pub const fn is_subset_of(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    /// True when every element lies in `[n]`.
    #[inline]
    pub const fn fits(self, n: u32) -> bool {
        self.0 & !low_mask(n) == 0
    }

    /// The elements strictly greater than `e`.
    #[inline]
    pub const fn above(self, e: u32) -> Self {
        ElementSet(self.0 & !low_mask(e))
    }

    /// The elements less than or equal to `e`.
    #[inline]
    pub const fn up_to(self, e: u32) -> Self {
        ElementSet(self.0 & low_mask(e))
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// The `i`-th smallest element, 1-based like the rest of the API.
    pub fn nth(self, i: usize) -> Option<u32> {
        if i == 0 {
            return None;
        }
        self.iter().nth(i - 1)
    }

    /// Complement inside `[n]`.
    #[inline]
    pub const fn complement(self, n: u32) -> Self {
        ElementSet(!self.0 & low_mask(n))
    }
}

/// Bitmask of `[n]`, saturating at 64 bits.
#[inline]
pub(crate) const fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(e + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for ElementSet {
    type Item = u32;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl FromIterator<u32> for ElementSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        ElementSet::from_elements(iter)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: ElementSet) -> ElementSet {
        self.union(rhs)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: ElementSet) -> ElementSet {
        self.intersection(rhs)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: ElementSet) -> ElementSet {
        self.difference(rhs)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
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

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a ⊆ b`.
pub fn subset_of(a: ElementSet, b: ElementSet) -> bool {
    a.is_subset_of(b)
}

/// The dominance order: equal sizes and the `i`-th smallest element of `a`
/// never exceeds the `i`-th smallest element of `b`.
pub fn prec_leq(a: ElementSet, b: ElementSet) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    #[test]
    fn subset_examples() {
        assert!(subset_of(s(&[]), s(&[2])));
        assert!(subset_of(s(&[1, 3]), s(&[1, 3])));
        assert!(!subset_of(s(&[2]), s(&[1, 3])));
    }

    #[test]
    fn prec_examples() {
        assert!(prec_leq(s(&[2, 3]), s(&[3, 5])));
        assert!(!prec_leq(s(&[2, 3]), s(&[1, 4])));
        assert!(!prec_leq(s(&[2]), s(&[2, 3])));
    }

    #[test]
    fn iteration_is_increasing() {
        let x = s(&[7, 1, 40, 3]);
        assert_eq!(x.to_vec(), vec![1, 3, 7, 40]);
        assert_eq!(x.max(), Some(40));
        assert_eq!(x.min(), Some(1));
        assert_eq!(x.nth(2), Some(3));
        assert_eq!(ElementSet::EMPTY.max(), None);
    }

    #[test]
    fn intervals() {
        assert_eq!(ElementSet::interval(2, 4), s(&[2, 3, 4]));
        assert!(ElementSet::interval(5, 4).is_empty());
        assert_eq!(ElementSet::full(3), s(&[1, 2, 3]));
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(s(&[1, 4, 6]).above(4), s(&[6]));
        assert_eq!(s(&[1, 4, 6]).up_to(4), s(&[1, 4]));
    }

    #[test]
    fn checked_construction() {
        assert_eq!(
            ElementSet::try_from_elements([3], 2),
            Err(Error::ElementOutOfRange { element: 3, n: 2 })
        );
        assert_eq!(
            ElementSet::try_from_elements([1, 1], 2),
            Err(Error::DuplicateElement(1))
        );
        assert_eq!(ElementSet::try_from_elements([2, 1], 2), Ok(s(&[1, 2])));
    }

    #[test]
    fn canonical_order_is_size_then_mask() {
        let mut v = vec![s(&[1, 2]), s(&[3]), s(&[]), s(&[1])];
        v.sort();
        assert_eq!(v, vec![s(&[]), s(&[1]), s(&[3]), s(&[1, 2])]);
    }

    #[test]
    fn display() {
        assert_eq!(s(&[2, 3, 6]).to_string(), "{2,3,6}");
        assert_eq!(ElementSet::EMPTY.to_string(), "∅");
    }
}
