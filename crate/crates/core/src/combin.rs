//! Small enumeration helpers over subsets of a fixed universe.

use crate::set::ElementSet;

/// Every subset of `universe`, in increasing numeric order of the bitmask.
pub fn subsets(universe: ElementSet) -> impl Iterator<Item = ElementSet> {
    let u = universe.bits();
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == u {
            None
        } else {
            Some(cur.wrapping_sub(u) & u)
        };
        Some(ElementSet::from_bits(cur))
    })
}

/// The `k`-element subsets of `universe`, in increasing numeric (colex) order.
pub fn k_subsets(universe: ElementSet, k: u32) -> impl Iterator<Item = ElementSet> {
    let positions: Vec<u32> = universe.iter().collect();
    let width = positions.len() as u32;
    // Gosper's hack over compressed indices, then scatter back onto `universe`.
    let mut next = if k > width {
        None
    } else if k == 0 {
        Some(0u64)
    } else {
        Some(crate::set::low_mask(k))
    };
    let limit = crate::set::low_mask(width);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            let candidate = (((r ^ cur) >> 2) / c) | r;
            if r == 0 || candidate > limit || candidate < cur {
                None
            } else {
                Some(candidate)
            }
        };
        let mut bits = 0u64;
        let mut rest = cur;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            bits |= 1 << (positions[i] - 1);
            rest &= rest - 1;
        }
        Some(ElementSet::from_bits(bits))
    })
}

/// `C(n, k)` in `u128`; saturates rather than overflowing.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// All `2^g` subsets of `universe` ordered by size descending, colex ascending
/// within a size. For `i < j` the `i`-th set is never a subset of the `j`-th.
pub fn size_descending(universe: ElementSet) -> Vec<ElementSet> {
    let width = universe.len();
    (0..=width)
        .rev()
        .flat_map(|k| k_subsets(universe, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_subsets_counted() {
        let u = ElementSet::from_elements([2, 5, 9]);
        let all: Vec<_> = subsets(u).collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|s| s.is_subset_of(u)));
        assert_eq!(subsets(ElementSet::EMPTY).count(), 1);
    }

    #[test]
    fn k_subsets_match_binomials() {
        let u = ElementSet::interval(3, 12);
        for k in 0..=11 {
            let v: Vec<_> = k_subsets(u, k).collect();
            assert_eq!(v.len() as u128, binomial(10, k as u64), "k={k}");
            assert!(v.iter().all(|s| s.len() == k && s.is_subset_of(u)));
            assert!(v.windows(2).all(|w| w[0].bits() < w[1].bits()));
        }
    }

    #[test]
    fn k_subsets_on_wide_universe() {
        assert_eq!(k_subsets(ElementSet::full(64), 63).count(), 64);
        assert_eq!(k_subsets(ElementSet::full(64), 64).count(), 1);
    }

    #[test]
    fn size_descending_has_no_forward_containment() {
        let order = size_descending(ElementSet::interval(4, 7));
        assert_eq!(order.len(), 16);
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                assert!(!order[i].is_subset_of(order[j]));
            }
        }
    }
}
