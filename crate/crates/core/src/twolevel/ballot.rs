//! t-ballot sets and the closed form for consecutive complete levels.

use crate::error::{Error, Result};
use crate::family::{check_cap, SetFamily, DEFAULT_MAX_GROUND};
use crate::set::ElementSet;

/// `s_i >= 2i - t` for every `i`.
pub fn is_t_ballot(s: ElementSet, t: u32) -> bool {
    s.iter().zip(1u32..).all(|(e, i)| e + t >= 2 * i)
}

/// `|s ∩ [m]| <= floor((m + t) / 2)` for every `m` in `[n]`.
pub fn is_t_ballot_by_prefix(s: ElementSet, t: u32, n: u32) -> bool {
    (1..=n).all(|m| s.up_to(m).len() <= (m + t) / 2)
}

/// Smallest `t >= 0` with `s` a t-ballot set.
pub fn t_min(s: ElementSet) -> u32 {
    s.iter()
        .zip(1u32..)
        .map(|(e, i)| (2 * i).saturating_sub(e))
        .max()
        .unwrap_or(0)
}

/// Size cut for the union of levels `k - ell + 1, ..., k`.
pub(crate) fn consecutive_size_cut(n: u32, k: u32, ell: u32) -> u32 {
    if 2 * k < n + ell {
        k
    } else {
        n - k + ell - 1
    }
}

pub(crate) fn check_consecutive(n: u32, k: u32, ell: u32) -> Result<()> {
    if ell == 0 || ell - 1 > k || k > n {
        return Err(Error::InvalidParams(format!(
            "need 0 <= ell-1 <= k <= n, got n={n} k={k} ell={ell}"
        )));
    }
    Ok(())
}

/// The order-shattered sets of levels `k - ell + 1, ..., k` of `P([n])`: the
/// `(ell-1)`-ballot sets up to the size cut.
pub fn osh_consecutive_levels(n: u32, k: u32, ell: u32) -> Result<SetFamily> {
    check_consecutive(n, k, ell)?;
    check_cap(n, DEFAULT_MAX_GROUND)?;
    let cut = consecutive_size_cut(n, k, ell);
    let members = (0..1u64 << n)
        .map(ElementSet::from_bits)
        .filter(|&s| s.len() <= cut && is_t_ballot(s, ell - 1))
        .collect();
    Ok(SetFamily::from_distinct_unchecked(n, members))
}
