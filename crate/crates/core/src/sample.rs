//! Random families for property tests and verification suites.

use rand::Rng;

use crate::family::SetFamily;
use crate::set::ElementSet;

/// Includes each subset of `[n]` independently with probability `q`.
///
/// Panics when `n` exceeds the default enumeration cap or `q` is outside `[0, 1]`.
pub fn random_family<R: Rng + ?Sized>(n: u32, q: f64, rng: &mut R) -> SetFamily {
    assert!(
        n <= crate::family::DEFAULT_MAX_GROUND,
        "n = {n} too large to sample"
    );
    let members = (0..1u64 << n)
        .filter(|_| rng.random_bool(q))
        .map(ElementSet::from_bits)
        .collect();
    SetFamily::from_distinct_unchecked(n, members)
}

/// A uniformly random subset of `[n]`.
pub fn random_set<R: Rng + ?Sized>(n: u32, rng: &mut R) -> ElementSet {
    ElementSet::from_bits(rng.random::<u64>() & crate::set::low_mask(n))
}
