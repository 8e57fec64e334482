//! Shattering, strong tracing and order shattering.
//!
//! Order shattering is decided on a numerically sorted slice of member masks.
//! Sorting numerically makes every trace class on a final segment `[e+1, n]`
//! a contiguous run, and inside a run the members avoiding `e` precede those
//! containing it. The recursion therefore works on sub-slices and never
//! allocates; the classes at each level are disjoint, so there is nothing to
//! memoize.

use crate::error::Result;
use crate::family::{check_cap, SetFamily, DEFAULT_MAX_GROUND};
use crate::set::ElementSet;

/// A family of `2^|target|` sets listed in standard order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShatterWitness {
    pub target: ElementSet,
    pub ordered: Vec<ElementSet>,
    pub n: u32,
}

impl ShatterWitness {
    pub fn new(target: ElementSet, ordered: Vec<ElementSet>, n: u32) -> Self {
        ShatterWitness { target, ordered, n }
    }

    /// The members as a family (errors if the listed sets repeat or leave `[n]`).
    pub fn family(&self) -> Result<SetFamily> {
        SetFamily::new(self.n, self.ordered.iter().copied())
    }
}

/// `{F ∩ s : F in f} = P(s)`.
pub fn shatters(f: &SetFamily, s: ElementSet) -> bool {
    let k = s.len();
    if (f.len() as u128) < 1u128 << k {
        return false;
    }
    let mut traces: Vec<u64> = f.iter().map(|m| m.bits() & s.bits()).collect();
    traces.sort_unstable();
    traces.dedup();
    traces.len() as u128 == 1u128 << k
}

/// Some `B ⊆ [n] \ s` has `B ∪ H ∈ f` for every `H ⊆ s`.
pub fn strongly_traces(f: &SetFamily, s: ElementSet) -> bool {
    let k = s.len();
    if (f.len() as u128) < 1u128 << k {
        return false;
    }
    f.iter()
        .filter(|b| b.intersection(s).is_empty())
        .any(|&b| crate::combin::subsets(s).all(|h| f.contains(b | h)))
}

/// All shattered sets. The empty family shatters nothing.
pub fn sh_all(f: &SetFamily) -> SetFamily {
    downset_search(f, |s| shatters(f, s))
}

/// All strongly traced sets. The empty family traces nothing.
pub fn st_all(f: &SetFamily) -> SetFamily {
    downset_search(f, |s| strongly_traces(f, s))
}

/// Level-by-level search for a downset predicate over subsets of the support:
/// a candidate of size `k + 1` is tested only when all its `k`-subsets passed.
fn downset_search(f: &SetFamily, pred: impl Fn(ElementSet) -> bool) -> SetFamily {
    let n = f.ground();
    if f.is_empty() || !pred(ElementSet::EMPTY) {
        return SetFamily::empty(n);
    }
    let support: Vec<u32> = f.support().iter().collect();
    let mut all = vec![ElementSet::EMPTY];
    let mut level = vec![ElementSet::EMPTY];
    while !level.is_empty() {
        // `level` is sorted canonically, which is plain mask order within a size.
        let mut next = Vec::new();
        for &s in &level {
            let top = s.max().unwrap_or(0);
            for &e in support.iter().filter(|&&e| e > top) {
                let c = s.with(e);
                let subsets_pass = s.iter().all(|x| level.binary_search(&c.without(x)).is_ok());
                if subsets_pass && pred(c) {
                    next.push(c);
                }
            }
        }
        next.sort_unstable();
        all.extend_from_slice(&next);
        level = next;
    }
    SetFamily::from_distinct_unchecked(n, all)
}

/// Members prepared for repeated order-shattering queries.
#[derive(Clone, Debug)]
pub struct OrderShatterIndex {
    masks: Vec<u64>,
}

impl OrderShatterIndex {
    pub fn new(f: &SetFamily) -> Self {
        OrderShatterIndex {
            masks: f.numeric_masks(),
        }
    }

    pub fn from_sets<I: IntoIterator<Item = ElementSet>>(sets: I) -> Self {
        let mut masks: Vec<u64> = sets.into_iter().map(ElementSet::bits).collect();
        masks.sort_unstable();
        masks.dedup();
        OrderShatterIndex { masks }
    }

    pub fn order_shatters(&self, s: ElementSet) -> bool {
        let desc = descending(s);
        shatters_slice(&self.masks, &desc)
    }

    pub fn witness(&self, s: ElementSet) -> Option<Vec<ElementSet>> {
        let desc = descending(s);
        let mut out = Vec::with_capacity(1 << desc.len());
        witness_slice(&self.masks, &desc, &mut out)
            .then(|| out.into_iter().map(ElementSet::from_bits).collect())
    }
}

fn descending(s: ElementSet) -> Vec<u32> {
    let mut v = s.to_vec();
    v.reverse();
    v
}

/// Splits a numerically sorted slice into runs sharing the trace on
/// `[top + 1, n]`, each run cut into (avoids `top`, contains `top`).
fn trace_classes(members: &[u64], top: u32) -> impl Iterator<Item = (&[u64], &[u64])> {
    let bit = 1u64 << (top - 1);
    let mut rest = members;
    std::iter::from_fn(move || {
        let first = *rest.first()?;
        let key = first >> top;
        let end = rest.partition_point(|&m| m >> top == key);
        let (class, tail) = rest.split_at(end);
        rest = tail;
        let cut = class.partition_point(|&m| m & bit == 0);
        Some(class.split_at(cut))
    })
}

fn shatters_slice(members: &[u64], desc: &[u32]) -> bool {
    let Some((&top, rest)) = desc.split_first() else {
        return !members.is_empty();
    };
    if (members.len() as u128) < 1u128 << desc.len() {
        return false;
    }
    trace_classes(members, top).any(|(without, with)| {
        !without.is_empty()
            && !with.is_empty()
            && shatters_slice(without, rest)
            && shatters_slice(with, rest)
    })
}

/// Appends a standard-order witness to `out`. The first class (smallest trace
/// mask) whose halves both succeed is used; the base case takes the
/// numerically smallest member.
fn witness_slice(members: &[u64], desc: &[u32], out: &mut Vec<u64>) -> bool {
    let Some((&top, rest)) = desc.split_first() else {
        return match members.first() {
            Some(&m) => {
                out.push(m);
                true
            }
            None => false,
        };
    };
    if (members.len() as u128) < 1u128 << desc.len() {
        return false;
    }
    let mark = out.len();
    for (without, with) in trace_classes(members, top) {
        if without.is_empty() || with.is_empty() {
            continue;
        }
        if witness_slice(without, rest, out) && witness_slice(with, rest, out) {
            return true;
        }
        out.truncate(mark);
    }
    false
}

/// Whether `f` order shatters `s`.
pub fn order_shatters(f: &SetFamily, s: ElementSet) -> bool {
    OrderShatterIndex::new(f).order_shatters(s)
}

/// Knobs for [`osh_direct_with`].
#[derive(Clone, Copy, Debug)]
pub struct OshOptions {
    pub max_ground: u32,
    /// Test a set only once all its one-smaller subsets are known members.
    pub prune: bool,
}

impl Default for OshOptions {
    fn default() -> Self {
        OshOptions {
            max_ground: DEFAULT_MAX_GROUND,
            prune: false,
        }
    }
}

/// All order-shattered sets, by testing every subset of `[n]`.
pub fn osh_direct(f: &SetFamily) -> Result<SetFamily> {
    osh_direct_with(f, OshOptions::default())
}

pub fn osh_direct_with(f: &SetFamily, opts: OshOptions) -> Result<SetFamily> {
    let n = f.ground();
    check_cap(n, opts.max_ground)?;
    let index = OrderShatterIndex::new(f);
    if opts.prune {
        return Ok(downset_search(f, |s| index.order_shatters(s)));
    }
    let members = (0..1u64 << n)
        .map(ElementSet::from_bits)
        .filter(|&s| index.order_shatters(s))
        .collect();
    Ok(SetFamily::from_distinct_unchecked(n, members))
}

/// A standard-order witness drawn from `f`, or `None` when `s ∉ osh(f)`.
pub fn extract_witness(f: &SetFamily, s: ElementSet) -> Option<ShatterWitness> {
    OrderShatterIndex::new(f)
        .witness(s)
        .map(|ordered| ShatterWitness::new(s, ordered, f.ground()))
}

/// Checks both standard-order conditions: the trace on the target of the
/// `j`-th set is the binary expansion of `j - 1`, and every aligned block of
/// `2^i` consecutive sets agrees above the `i`-th target element.
pub fn verify_standard_order(w: &ShatterWitness) -> bool {
    let elems = w.target.to_vec();
    let k = elems.len();
    if k >= 63 || w.ordered.len() != 1usize << k {
        return false;
    }
    if !w.target.fits(w.n) || w.ordered.iter().any(|g| !g.fits(w.n)) {
        return false;
    }
    let mut sorted = w.ordered.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return false;
    }
    for (j0, g) in w.ordered.iter().enumerate() {
        for (i, &e) in elems.iter().enumerate() {
            if g.contains(e) != (j0 >> i & 1 == 1) {
                return false;
            }
        }
    }
    for (i, &e) in elems.iter().enumerate() {
        let block = 1usize << (i + 1);
        for chunk in w.ordered.chunks(block) {
            let trace = chunk[0].above(e);
            if chunk.iter().any(|g| g.above(e) != trace) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::is_downset;

    fn s(v: &[u32]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|v| s(v))).unwrap()
    }

    #[test]
    fn shatters_examples() {
        let p2 = SetFamily::power_set(2).unwrap();
        assert!(shatters(&p2, s(&[1, 2])));
        let f = fam(2, &[&[1], &[2]]);
        assert!(shatters(&f, s(&[1])));
        assert!(!shatters(&f, s(&[1, 2])));
        assert!(shatters(&f, ElementSet::EMPTY));
    }

    #[test]
    fn sh_all_examples() {
        assert_eq!(sh_all(&fam(2, &[&[1], &[2]])), fam(2, &[&[], &[1], &[2]]));
        assert_eq!(sh_all(&SetFamily::empty(2)), SetFamily::empty(2));
        let p2 = SetFamily::power_set(2).unwrap();
        assert_eq!(sh_all(&p2), p2);
    }

    #[test]
    fn strongly_traces_examples() {
        assert!(strongly_traces(&fam(2, &[&[], &[1]]), s(&[1])));
        assert!(strongly_traces(&fam(2, &[&[2], &[1, 2]]), s(&[1])));
        assert!(!strongly_traces(&fam(2, &[&[1], &[2]]), s(&[1])));
    }

    #[test]
    fn st_all_examples() {
        assert_eq!(st_all(&fam(2, &[&[1], &[2]])), fam(2, &[&[]]));
        let p2 = SetFamily::power_set(2).unwrap();
        assert_eq!(st_all(&p2), p2);
        assert_eq!(st_all(&SetFamily::empty(2)), SetFamily::empty(2));
    }

    #[test]
    fn order_shatters_examples() {
        let f = fam(2, &[&[1], &[2]]);
        assert!(order_shatters(&f, s(&[2])));
        assert!(!order_shatters(&f, s(&[1])));
        assert!(order_shatters(&fam(3, &[&[1, 3]]), ElementSet::EMPTY));
        assert!(!order_shatters(&SetFamily::empty(3), ElementSet::EMPTY));
    }

    #[test]
    fn osh_direct_examples() {
        assert_eq!(
            osh_direct(&fam(2, &[&[1], &[2]])).unwrap(),
            fam(2, &[&[], &[2]])
        );
        assert_eq!(osh_direct(&fam(2, &[&[1, 2]])).unwrap(), fam(2, &[&[]]));
        let p2 = SetFamily::power_set(2).unwrap();
        assert_eq!(osh_direct(&p2).unwrap(), p2);
    }

    #[test]
    fn osh_direct_respects_cap() {
        let big = SetFamily::new(30, [s(&[30])]).unwrap();
        assert!(matches!(
            osh_direct(&big),
            Err(crate::Error::GroundTooLarge { n: 30, .. })
        ));
        let opts = OshOptions {
            max_ground: 30,
            prune: true,
        };
        assert_eq!(osh_direct_with(&big, opts).unwrap().len(), 1);
    }

    #[test]
    fn witness_examples() {
        let p2 = SetFamily::power_set(2).unwrap();
        let w = extract_witness(&p2, s(&[1, 2])).unwrap();
        assert_eq!(w.ordered, vec![s(&[]), s(&[1]), s(&[2]), s(&[1, 2])]);
        let f = fam(2, &[&[1], &[2]]);
        assert_eq!(
            extract_witness(&f, s(&[2])).unwrap().ordered,
            vec![s(&[1]), s(&[2])]
        );
        assert!(extract_witness(&f, s(&[1])).is_none());
    }

    #[test]
    fn verify_examples() {
        let ok = ShatterWitness::new(s(&[2]), vec![s(&[1]), s(&[2])], 2);
        assert!(verify_standard_order(&ok));
        let swapped = ShatterWitness::new(s(&[2]), vec![s(&[2]), s(&[1])], 2);
        assert!(!verify_standard_order(&swapped));
        let full = ShatterWitness::new(s(&[1, 2]), vec![s(&[]), s(&[1]), s(&[2]), s(&[1, 2])], 2);
        assert!(verify_standard_order(&full));
    }

    #[test]
    fn verify_rejects_broken_tail_agreement() {
        // {1} and {2,3}: condition (i) holds for target {1} but traces on [2,3] differ.
        let w = ShatterWitness::new(s(&[1]), vec![s(&[2, 3]), s(&[1])], 3);
        assert!(!verify_standard_order(&w));
        let wrong_len = ShatterWitness::new(s(&[1]), vec![s(&[1])], 3);
        assert!(!verify_standard_order(&wrong_len));
    }

    #[test]
    fn pruned_and_plain_osh_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.random_range(1..=7);
            let f = crate::sample::random_family(n, 0.4, &mut rng);
            let plain = osh_direct(&f).unwrap();
            let pruned = osh_direct_with(
                &f,
                OshOptions {
                    prune: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(plain, pruned);
            assert!(is_downset(&plain));
            assert_eq!(plain.len(), f.len());
        }
    }
}
