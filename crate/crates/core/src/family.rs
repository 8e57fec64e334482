//! Families of subsets of `[n]` in canonical order.

use std::fmt;

use crate::combin::k_subsets;
use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENT};

/// Default cap on the ground size for anything that loops over all of `P([n])`.
pub const DEFAULT_MAX_GROUND: u32 = 24;

/// A set of distinct subsets of `[n]`, stored in canonical order (cardinality,
/// then bitmask), so two families are equal exactly when their member lists are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: u32,
    members: Vec<ElementSet>,
}

impl SetFamily {
    /// Validating constructor: every member must fit in `[n]` and appear once.
    pub fn new<I: IntoIterator<Item = ElementSet>>(n: u32, members: I) -> Result<Self> {
        check_ground(n)?;
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        for &m in &members {
            if !m.fits(n) {
                return Err(Error::ElementOutOfRange {
                    element: m.max().unwrap_or(0),
                    n,
                });
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet(w[0]));
        }
        Ok(SetFamily { n, members })
    }

    /// Like [`SetFamily::new`] but silently drops repeated members.
    pub fn from_sets<I: IntoIterator<Item = ElementSet>>(n: u32, members: I) -> Result<Self> {
        check_ground(n)?;
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        if let Some(m) = members.iter().find(|m| !m.fits(n)) {
            return Err(Error::ElementOutOfRange {
                element: ElementSet::max(*m).unwrap_or(0),
                n,
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { n, members })
    }

    /// Caller guarantees members are distinct and inside `[n]`.
    pub(crate) fn from_distinct_unchecked(n: u32, mut members: Vec<ElementSet>) -> Self {
        members.sort_unstable();
        debug_assert!(members.windows(2).all(|w| w[0] != w[1]));
        debug_assert!(members.iter().all(|m| m.fits(n)));
        SetFamily { n, members }
    }

    pub fn empty(n: u32) -> Self {
        SetFamily {
            n,
            members: Vec::new(),
        }
    }

    /// `P([n])`.
    pub fn power_set(n: u32) -> Result<Self> {
        check_ground(n)?;
        if n > DEFAULT_MAX_GROUND {
            return Err(Error::GroundTooLarge {
                n,
                cap: DEFAULT_MAX_GROUND,
            });
        }
        let members = (0..1u64 << n).map(ElementSet::from_bits).collect();
        Ok(Self::from_distinct_unchecked(n, members))
    }

    /// The union of the complete levels `C([n], k)` for every `k` in `levels`.
    pub fn levels<I: IntoIterator<Item = u32>>(n: u32, levels: I) -> Result<Self> {
        check_ground(n)?;
        let mut ks: Vec<u32> = levels.into_iter().filter(|&k| k <= n).collect();
        ks.sort_unstable();
        ks.dedup();
        let members = ks
            .iter()
            .flat_map(|&k| k_subsets(ElementSet::full(n), k))
            .collect();
        Ok(Self::from_distinct_unchecked(n, members))
    }

    #[inline]
    pub fn ground(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    pub fn into_members(self) -> Vec<ElementSet> {
        self.members
    }

    #[inline]
    pub fn contains(&self, s: ElementSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Members as raw masks sorted numerically; this ordering groups members by
    /// their trace on any final segment `[e+1, n]`.
    pub fn numeric_masks(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.members.iter().map(|m| m.bits()).collect();
        v.sort_unstable();
        v
    }

    /// The same members viewed over a larger (or smaller) ground.
    pub fn with_ground(&self, n: u32) -> Result<Self> {
        SetFamily::new(n, self.members.iter().copied())
    }

    /// Union of all members.
    pub fn support(&self) -> ElementSet {
        self.members
            .iter()
            .fold(ElementSet::EMPTY, |acc, &m| acc | m)
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if n > MAX_ELEMENT {
        Err(Error::GroundTooLarge {
            n,
            cap: MAX_ELEMENT,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn check_cap(n: u32, cap: u32) -> Result<()> {
    if n > cap.min(MAX_ELEMENT) {
        Err(Error::GroundTooLarge { n, cap })
    } else {
        Ok(())
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] ", self.n)?;
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// True when the family is closed under taking subsets.
pub fn is_downset(f: &SetFamily) -> bool {
    // Closure under single-element removal is enough.
    f.iter()
        .all(|&m| m.iter().all(|e| f.contains(m.without(e))))
}

/// `{[n] \ F : F in f}`.
pub fn complement_family(f: &SetFamily) -> SetFamily {
    let n = f.ground();
    SetFamily::from_distinct_unchecked(n, f.iter().map(|m| m.complement(n)).collect())
}

/// Number of sets in a longest chain `S_1 ⊂ ... ⊂ S_k` inside `f`.
pub fn longest_chain(f: &SetFamily) -> usize {
    let len = f.len();
    if len == 0 {
        return 0;
    }
    let n = f.ground();
    let pairwise_cost = (len as u128) * (len as u128);
    let lattice_cost = (1u128 << n) * (n.max(1) as u128);
    if n <= 26 && lattice_cost < pairwise_cost {
        longest_chain_lattice(f)
    } else {
        longest_chain_pairwise(f)
    }
}

/// Longest-path DP over the containment DAG. Members arrive sorted by
/// cardinality, so every proper subset of a member precedes it.
fn longest_chain_pairwise(f: &SetFamily) -> usize {
    let m = f.members();
    let mut best = vec![1usize; m.len()];
    for i in 0..m.len() {
        for j in 0..i {
            if m[j].is_subset_of(m[i]) && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// `g(X)` = longest chain of members inside `X`, filled over all of `P([n])`.
fn longest_chain_lattice(f: &SetFamily) -> usize {
    let n = f.ground();
    let size = 1usize << n;
    let mut in_f = vec![false; size];
    for m in f {
        in_f[m.bits() as usize] = true;
    }
    let mut g = vec![0u8; size];
    for x in 0..size {
        let mut best = 0u8;
        let mut rest = x;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            best = best.max(g[x ^ bit]);
            rest ^= bit;
        }
        g[x] = best + in_f[x] as u8;
    }
    g[size - 1] as usize
}

/// No chain of `ell + 1` distinct members.
pub fn is_l_sperner(f: &SetFamily, ell: u32) -> bool {
    assert!(ell >= 1, "ell must be positive");
    longest_chain(f) <= ell as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|v| s(v))).unwrap()
    }

    #[test]
    fn canonical_order_ignores_input_order() {
        let a = fam(3, &[&[1, 2], &[3], &[]]);
        let b = fam(3, &[&[], &[1, 2], &[3]]);
        assert_eq!(a, b);
        assert_eq!(a.members(), &[s(&[]), s(&[3]), s(&[1, 2])]);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(
            SetFamily::new(2, [s(&[3])]),
            Err(Error::ElementOutOfRange { element: 3, n: 2 })
        );
        assert_eq!(
            SetFamily::new(2, [s(&[1]), s(&[1])]),
            Err(Error::DuplicateSet(s(&[1])))
        );
        assert!(matches!(
            SetFamily::new(64, []),
            Err(Error::GroundTooLarge { .. })
        ));
    }

    #[test]
    fn downset_examples() {
        assert!(is_downset(&fam(2, &[&[], &[1], &[2]])));
        assert!(!is_downset(&fam(2, &[&[1, 2]])));
        assert!(is_downset(&SetFamily::empty(3)));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_family(&fam(2, &[&[1]])), fam(2, &[&[2]]));
        let selfc = fam(3, &[&[], &[1, 2, 3]]);
        assert_eq!(complement_family(&selfc), selfc);
        let pair = fam(2, &[&[1], &[2]]);
        assert_eq!(complement_family(&pair), pair);
    }

    #[test]
    fn chain_examples() {
        assert_eq!(longest_chain(&fam(2, &[&[], &[1], &[1, 2]])), 3);
        assert_eq!(longest_chain(&fam(2, &[&[1], &[2]])), 1);
        assert_eq!(longest_chain(&SetFamily::empty(2)), 0);
    }

    #[test]
    fn sperner_examples() {
        assert!(is_l_sperner(&fam(2, &[&[1], &[2]]), 1));
        assert!(!is_l_sperner(&fam(2, &[&[], &[1], &[1, 2]]), 2));
        assert!(is_l_sperner(&fam(2, &[&[], &[1]]), 2));
    }

    #[test]
    fn power_set_chain_is_n_plus_one() {
        for n in 0..=8 {
            let p = SetFamily::power_set(n).unwrap();
            assert_eq!(longest_chain(&p), n as usize + 1);
            assert_eq!(longest_chain_pairwise(&p), n as usize + 1);
        }
    }

    #[test]
    fn chain_algorithms_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..=7);
            let members: Vec<_> = (0..1u64 << n)
                .filter(|_| rng.random_bool(0.3))
                .map(ElementSet::from_bits)
                .collect();
            let f = SetFamily::new(n, members).unwrap();
            if f.is_empty() {
                continue;
            }
            assert_eq!(
                longest_chain_pairwise(&f),
                longest_chain_lattice(&f),
                "{f:?}"
            );
        }
    }

    #[test]
    fn levels_constructor() {
        let f = SetFamily::levels(4, [1, 3]).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|m| m.len() == 1 || m.len() == 3));
    }
}
