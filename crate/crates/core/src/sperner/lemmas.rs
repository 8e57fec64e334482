//! The block-level constructions. Each one consumes and produces exact
//! witnesses: the family has `2^|target|` members and is itself the
//! standard-order witness, so decomposing it by target bits is canonical.

use crate::combin::{k_subsets, size_descending};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{ElementSet, MAX_ELEMENT};
use crate::shatter::extract_witness;

use super::SpernerWitness;

fn shape(target: ElementSet, reason: impl Into<String>) -> Error {
    Error::ShapeMismatch {
        target,
        reason: reason.into(),
    }
}

/// Checks that a ground computed in wide arithmetic fits the cap.
pub(super) fn check_ground(top: u64, cap: u32) -> Result<u32> {
    let cap = cap.min(MAX_ELEMENT);
    if top > cap as u64 {
        Err(Error::GroundTooLarge {
            n: top.min(u32::MAX as u64) as u32,
            cap,
        })
    } else {
        Ok(top as u32)
    }
}

fn pow2(g: u32) -> u64 {
    if g >= 63 {
        u64::MAX
    } else {
        1 << g
    }
}

/// The members of an exact witness in standard order.
fn standard_order(w: &SpernerWitness) -> Result<Vec<ElementSet>> {
    let ordered = extract_witness(&w.family, w.target)
        .ok_or_else(|| shape(w.target, "family does not order shatter its target"))?
        .ordered;
    if ordered.len() != w.family.len() {
        return Err(shape(w.target, "family is not an exact witness"));
    }
    Ok(ordered)
}

/// The last maximal run `[start, max]` of a nonempty target.
fn last_run(target: ElementSet) -> Option<(u32, u32)> {
    let top = target.max()?;
    let mut start = top;
    while start > 1 && target.contains(start - 1) {
        start -= 1;
    }
    Some((start, top - start + 1))
}

/// Among the prefix chain `C^(0) ⊂ ... ⊂ C^(r)` of the run, picks `p` links
/// sharing the same `B`-value. The `B`-values are tried in increasing mask
/// order and the first with at least `p` links wins.
fn pigeonhole_chain(b_values: &[ElementSet], p: usize) -> Vec<usize> {
    let mut distinct: Vec<ElementSet> = b_values.to_vec();
    distinct.sort_unstable_by_key(|b| b.bits());
    distinct.dedup();
    for b in distinct {
        let hits: Vec<usize> = (0..b_values.len()).filter(|&i| b_values[i] == b).collect();
        if hits.len() >= p {
            return hits[..p].to_vec();
        }
    }
    unreachable!("pigeonhole guarantees a value with {p} links")
}

fn build(n: u32, members: Vec<ElementSet>) -> SetFamily {
    SetFamily::from_distinct_unchecked(n, members)
}

/// Witness for `[g+1, g + ell*2^g - 1]` on that same ground.
///
/// The subsets `G_1, ..., G_{2^g}` of `[g]` go size-descending, so no earlier
/// one is contained in a later one; `G_i` is paired with every tail of size
/// `(i-1)*ell` to `i*ell - 1`. `g = 0` is allowed and gives `P([ell - 1])`.
pub fn construct_single_block(g: u32, ell: u32) -> Result<SpernerWitness> {
    single_block_capped(g, ell, crate::family::DEFAULT_MAX_GROUND)
}

pub(super) fn single_block_capped(g: u32, ell: u32, cap: u32) -> Result<SpernerWitness> {
    if ell == 0 {
        return Err(Error::InvalidParams("ell must be positive".into()));
    }
    let top = check_ground(
        (g as u64).saturating_add((ell as u64).saturating_mul(pow2(g))) - 1,
        cap,
    )?;
    let target = ElementSet::interval(g + 1, top);
    let mut members = Vec::new();
    for (i, &gi) in size_descending(ElementSet::full(g)).iter().enumerate() {
        let lo = i as u32 * ell;
        for size in lo..lo + ell {
            members.extend(k_subsets(target, size).map(|tail| gi | tail));
        }
    }
    Ok(SpernerWitness::new(target, ell, build(top, members)))
}

/// From a normalized witness for `A` (max `a_t`), a witness for
/// `A ∪ [a_t+g+1, a_t+g+2^g-1]`.
pub fn extend_with_gap(w: &SpernerWitness, g: u32) -> Result<SpernerWitness> {
    extend_with_gap_capped(w, g, crate::family::DEFAULT_MAX_GROUND)
}

pub(super) fn extend_with_gap_capped(
    w: &SpernerWitness,
    g: u32,
    cap: u32,
) -> Result<SpernerWitness> {
    if g == 0 {
        return Err(Error::InvalidParams("gap must be positive".into()));
    }
    let at = w.target.max().unwrap_or(0);
    if w.n() != at {
        return Err(Error::WitnessNotNormalized { n: w.n(), max: at });
    }
    let top = check_ground(at as u64 + g as u64 + pow2(g) - 1, cap)?;
    let block = ElementSet::interval(at + g + 1, top);
    let gaps = size_descending(ElementSet::interval(at + 1, at + g));
    let mut members = Vec::with_capacity(w.family.len() << block.len());
    for (i, &gi) in gaps.iter().enumerate() {
        for tail in k_subsets(block, i as u32) {
            members.extend(w.family.iter().map(|&s| s | gi | tail));
        }
    }
    Ok(SpernerWitness::new(
        w.target | block,
        w.ell,
        build(top, members),
    ))
}

/// From a witness for `A_1 ∪ {a_t} ∪ [a_t+g+1, a_t+g+r]` (gap exactly `g`
/// before the final run), a witness for `A_1 ∪ [a_t+g, a_t+g+(p+1)2^g-2]`
/// with `p = ceil((r+1)/2^g)`.
pub fn shift_and_extend(w: &SpernerWitness, g: u32) -> Result<SpernerWitness> {
    shift_and_extend_capped(w, g, crate::family::DEFAULT_MAX_GROUND)
}

pub(super) fn shift_and_extend_capped(
    w: &SpernerWitness,
    g: u32,
    cap: u32,
) -> Result<SpernerWitness> {
    if g == 0 {
        return Err(Error::InvalidParams("gap must be positive".into()));
    }
    let target = w.target;
    let (start, r) = last_run(target).ok_or_else(|| shape(target, "empty target"))?;
    let prefix = target.up_to(start - 1);
    let at = prefix
        .max()
        .ok_or_else(|| shape(target, "no element before the final run"))?;
    if start - at - 1 != g {
        return Err(shape(
            target,
            format!("gap before the final run is {}, not {g}", start - at - 1),
        ));
    }
    let p = (r as u64 + 1).div_ceil(pow2(g));
    let top = check_ground(at as u64 + g as u64 + (p + 1) * pow2(g) - 2, cap)?;
    let p = p as usize;

    let ordered = standard_order(w)?;
    let t = prefix.len() as usize;
    let half = 1usize << (t - 1);
    let low = ElementSet::full(at - 1);
    let gap = ElementSet::interval(at + 1, at + g);
    // Block of the run subset with code `c` spans indices `c*2^t .. (c+1)*2^t`.
    let block = |c: usize| &ordered[c << t..(c + 1) << t];
    let chain_code = |i: usize| (1usize << i) - 1;

    let b_values: Vec<ElementSet> = (0..=r as usize)
        .map(|i| block(chain_code(i))[0] & gap)
        .collect();
    let links = pigeonhole_chain(&b_values, p);
    let mut parts: Vec<Vec<ElementSet>> = links
        .iter()
        .map(|&i| {
            block(chain_code(i))[..half]
                .iter()
                .map(|&x| x & low)
                .collect()
        })
        .collect();
    let last = block(chain_code(links[p - 1]));
    parts.push(last[half..].iter().map(|&x| x & low).collect());

    let run = ElementSet::interval(at + g, top);
    let gs = size_descending(ElementSet::interval(at, at + g - 1));
    let mut members = Vec::with_capacity(half << run.len());
    for (j, &gj) in gs.iter().enumerate() {
        for (i, part) in parts.iter().enumerate() {
            let size = (j * (p + 1) + i) as u32;
            for y in k_subsets(run, size) {
                members.extend(part.iter().map(|&x| x | gj | y));
            }
        }
    }
    let new_target = target.up_to(at - 1) | run;
    Ok(SpernerWitness::new(new_target, w.ell, build(top, members)))
}

/// From a normalized witness for `A` ending in a run `a_t, a_t+1, ..., a_t+r`
/// (`r >= 1`), a witness for `{..., a_t} ∪ [a_t+g+1, a_t+g+(r+1)2^g-1]`.
/// One gap extension followed by `r` shift-and-extend steps.
pub fn extend_consecutive(w: &SpernerWitness, g: u32, r: u32) -> Result<SpernerWitness> {
    extend_consecutive_capped(w, g, r, crate::family::DEFAULT_MAX_GROUND)
}

pub(super) fn extend_consecutive_capped(
    w: &SpernerWitness,
    g: u32,
    r: u32,
    cap: u32,
) -> Result<SpernerWitness> {
    let top = w
        .target
        .max()
        .ok_or_else(|| shape(w.target, "empty target"))?;
    if r == 0 || r >= top || !ElementSet::interval(top - r, top).is_subset_of(w.target) {
        return Err(shape(
            w.target,
            format!("does not end in a run of {} elements", r as u64 + 1),
        ));
    }
    if g == 0 {
        return Err(Error::InvalidParams("gap must be positive".into()));
    }
    check_ground(
        top as u64 - r as u64 + g as u64 + (r as u64 + 1) * pow2(g) - 1,
        cap,
    )?;
    let mut cur = extend_with_gap_capped(w, g, cap)?;
    for _ in 0..r {
        cur = shift_and_extend_capped(&cur, g, cap)?;
    }
    Ok(cur)
}

/// From a witness for `A_1 ∪ [a_t+1, a_t+r]` (`r >= 2`, `a_t ∉ A`), a witness
/// for `A_1 ∪ {a_t} ∪ [a_t+2, a_t+2p-2]` with `p = ceil((r+1)/2)`.
pub fn shift_back(w: &SpernerWitness) -> Result<SpernerWitness> {
    let target = w.target;
    let (start, r) = last_run(target).ok_or_else(|| shape(target, "empty target"))?;
    if r < 2 {
        return Err(shape(target, "final run is shorter than 2"));
    }
    if start < 2 {
        return Err(shape(target, "final run has no gap before it"));
    }
    let at = start - 1;
    let prefix = target.up_to(at);
    let p = (r as usize + 1).div_ceil(2);
    let top = at + 2 * p as u32 - 2;

    let ordered = standard_order(w)?;
    let t1 = prefix.len() as usize;
    let low = ElementSet::full(at - 1);
    let block = |c: usize| &ordered[c << t1..(c + 1) << t1];
    let chain_code = |i: usize| (1usize << i) - 1;

    let b_values: Vec<ElementSet> = (0..=r as usize)
        .map(|i| block(chain_code(i))[0] & ElementSet::singleton(at))
        .collect();
    let links = pigeonhole_chain(&b_values, p);
    let parts: Vec<Vec<ElementSet>> = links
        .iter()
        .map(|&i| block(chain_code(i)).iter().map(|&x| x & low).collect())
        .collect();

    let run = ElementSet::interval(at + 2, top);
    let a = ElementSet::singleton(at);
    let a1 = ElementSet::singleton(at + 1);
    let mut members = Vec::with_capacity(parts[0].len() << (run.len() + 2));
    for i in 1..p {
        let (lower, upper) = (&parts[i - 1], &parts[i]);
        for y in k_subsets(run, i as u32 - 1) {
            members.extend(lower.iter().map(|&x| x | a1 | y));
            members.extend(upper.iter().map(|&x| x | a | a1 | y));
        }
        for y in k_subsets(run, (p + i) as u32 - 2) {
            members.extend(lower.iter().map(|&x| x | y));
            members.extend(upper.iter().map(|&x| x | a | y));
        }
    }
    Ok(SpernerWitness::new(
        prefix | a | run,
        w.ell,
        build(top, members),
    ))
}

/// From a witness for `A_1 ∪ [a_t+g, a_t+g+r-1]` with `r >= 2^g` and
/// `a_t > max(A_1)`, a witness for `A_1 ∪ [a_t, a_t + ceil((r+1)/2^g) - 2]`.
pub fn shift_back_by_gap(w: &SpernerWitness, g: u32) -> Result<SpernerWitness> {
    let target = w.target;
    if g == 0 {
        return Err(Error::InvalidParams("gap must be positive".into()));
    }
    let (start, r) = last_run(target).ok_or_else(|| shape(target, "empty target"))?;
    if (r as u64) < pow2(g) {
        return Err(shape(
            target,
            format!("final run of length {r} is shorter than 2^{g}"),
        ));
    }
    let prefix = target.up_to(start - 1);
    if start <= g || prefix.max().unwrap_or(0) >= start - g {
        return Err(shape(
            target,
            format!("gap before the final run is smaller than {g}"),
        ));
    }
    let mut cur = w.clone();
    let mut start = start;
    let mut len = r;
    for _ in 0..g {
        let steps = (len + 1).div_ceil(2) - 1;
        for _ in 0..steps {
            cur = shift_back(&cur)?;
        }
        len = (len + 1).div_ceil(2) - 1;
        start -= 1;
        let run = if len == 0 {
            ElementSet::EMPTY
        } else {
            ElementSet::interval(start, start + len - 1)
        };
        cur = cur.restrict(prefix | run)?;
    }
    Ok(cur)
}
