//! Order shattering for unions of complete levels of `P([n])`.
//!
//! For levels `a` and `a + d` the order-shattered sets form an upset in the
//! dominance order within each size, so the whole closure is described by its
//! list of dominance-minimal sets.

mod ballot;
mod construct;

pub use ballot::{is_t_ballot, is_t_ballot_by_prefix, osh_consecutive_levels, t_min};
pub use construct::{
    construct_b_m, construct_b_mj, construct_claim_even, construct_for, construct_s_mj,
    construct_sprime_mr, equal_prefix_check,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{prec_leq, ElementSet, MAX_ELEMENT};

/// The family `C([n], a) ∪ C([n], a + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoLevelParams {
    pub n: u32,
    pub a: u32,
    pub d: u32,
}

impl TwoLevelParams {
    pub fn new(n: u32, a: u32, d: u32) -> Result<Self> {
        if d == 0 || a + d > n || n > MAX_ELEMENT {
            return Err(Error::InvalidParams(format!(
                "need d >= 1 and a + d <= n <= 63, got n={n} a={a} d={d}"
            )));
        }
        Ok(TwoLevelParams { n, a, d })
    }

    /// Both levels as a family.
    pub fn family(&self) -> Result<SetFamily> {
        SetFamily::levels(self.n, [self.a, self.a + self.d])
    }

    fn ints(&self) -> (i64, i64, i64) {
        (self.n as i64, self.a as i64, self.d as i64)
    }

    /// `M_1 = min{d, a-m+1, n-m-a-d+1, n-2m-2d+2}`.
    pub fn m1(&self, m: u32) -> i64 {
        let (n, a, d) = self.ints();
        let m = m as i64;
        d.min(a - m + 1)
            .min(n - m - a - d + 1)
            .min(n - 2 * m - 2 * d + 2)
    }

    /// `M_2 = min{a-m-r, n-m-r-a-d, n-2m-2r-2d}`.
    pub fn m2(&self, m: u32, r: u32) -> i64 {
        let (n, a, d) = self.ints();
        let (m, r) = (m as i64, r as i64);
        (a - m - r)
            .min(n - m - r - a - d)
            .min(n - 2 * m - 2 * r - 2 * d)
    }

    /// Largest size of the ballot minimal sets `B_m`.
    pub fn ballot_bound(&self) -> u32 {
        let (n, a, d) = (self.n, self.a, self.d);
        a.min(n - a).max((a + d).min(n - a - d))
    }

    /// `a < n/2 < a + d`.
    pub fn straddles_middle(&self) -> bool {
        2 * self.a < self.n && self.n < 2 * (self.a + self.d)
    }
}

/// `M = min{d, a+1, n-a-d+1, n-2d+2}`, which bounds `t_min` of every
/// non-ballot order-shattered set. May be negative.
pub fn tmin_bound(p: &TwoLevelParams) -> i64 {
    let (n, a, d) = p.ints();
    d.min(a + 1).min(n - a - d + 1).min(n - 2 * d + 2)
}

/// Names of the dominance-minimal sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinimalSetKind {
    /// `{2, 4, ..., 2m}`.
    B(u32),
    /// `{2, ..., 2m} ∪ [2m+d, 2m+d+j-1]`.
    Bmj(u32, u32),
    /// `{2, ..., 2m} ∪ [2m+d, 2m+2d+j-1]`.
    Smj(u32, u32),
    /// `{2, ..., 2m} ∪ [2m+d, 2m+3d-2] ∪ {2m+3d, 2m+3d+2, ..., 2m+3d+2r}`.
    SPrime(u32, u32),
    /// `∅` for `d = 2`.
    D2Empty,
    /// `{2}` for `d = 2`.
    D2Two,
    /// `{2, 3}` for `d = 2`.
    D2TwoThree,
    /// `{2, 3, 4, 6, ..., 2k}` for `d = 2`.
    D2Sk(u32),
    /// The least `t`-ballot set of size `m`, `s_i = max(i, 2i - t)`; used for `d = 1`.
    BallotMin { t: u32, m: u32 },
}

fn evens(m: u32) -> ElementSet {
    ElementSet::from_elements((1..=m).map(|i| 2 * i))
}

fn interval_checked(lo: u64, hi: u64) -> Option<ElementSet> {
    (hi <= MAX_ELEMENT as u64).then(|| ElementSet::interval(lo as u32, hi as u32))
}

impl MinimalSetKind {
    /// The set itself, or `None` if it would leave `[63]`.
    pub fn realize(&self, d: u32) -> Option<ElementSet> {
        let d = d as u64;
        let fits = |top: u64| top <= MAX_ELEMENT as u64;
        match *self {
            MinimalSetKind::B(m) => fits(2 * m as u64).then(|| evens(m)),
            MinimalSetKind::Bmj(m, j) => {
                let lo = 2 * m as u64 + d;
                let run = if j == 0 {
                    ElementSet::EMPTY
                } else {
                    interval_checked(lo, lo + j as u64 - 1)?
                };
                Some(evens(m) | run)
            }
            MinimalSetKind::Smj(m, j) => {
                let lo = 2 * m as u64 + d;
                Some(evens(m) | interval_checked(lo, lo + d + j as u64 - 1)?)
            }
            MinimalSetKind::SPrime(m, r) => {
                let base = 2 * m as u64;
                let run = interval_checked(base + d, base + 3 * d - 2)?;
                let top = base + 3 * d + 2 * r as u64;
                if !fits(top) {
                    return None;
                }
                let tail =
                    ElementSet::from_elements((0..=r).map(|i| (base + 3 * d) as u32 + 2 * i));
                Some(evens(m) | run | tail)
            }
            MinimalSetKind::D2Empty => Some(ElementSet::EMPTY),
            MinimalSetKind::D2Two => Some(ElementSet::singleton(2)),
            MinimalSetKind::D2TwoThree => Some(ElementSet::from_elements([2, 3])),
            MinimalSetKind::D2Sk(k) => {
                fits(2 * k as u64).then(|| ElementSet::from_elements([2, 3]) | evens(k))
            }
            MinimalSetKind::BallotMin { t, m } => {
                fits((m as u64).max(2 * m as u64 - (t as u64).min(2 * m as u64))).then(|| {
                    ElementSet::from_elements((1..=m).map(|i| i.max((2 * i).saturating_sub(t))))
                })
            }
        }
    }
}

impl fmt::Display for MinimalSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinimalSetKind::B(m) => write!(f, "B_{m}"),
            MinimalSetKind::Bmj(m, j) => write!(f, "B_{m},{j}"),
            MinimalSetKind::Smj(m, j) => write!(f, "S_{m},{j}"),
            MinimalSetKind::SPrime(m, r) => write!(f, "S'_{m},{r}"),
            MinimalSetKind::D2Empty => f.write_str("empty"),
            MinimalSetKind::D2Two => f.write_str("{2}"),
            MinimalSetKind::D2TwoThree => f.write_str("{2,3}"),
            MinimalSetKind::D2Sk(k) => write!(f, "S_{k}"),
            MinimalSetKind::BallotMin { t, m } => write!(f, "ballot(t={t},size={m})"),
        }
    }
}

/// A realized minimal set and its name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalSet {
    pub kind: MinimalSetKind,
    pub set: ElementSet,
}

/// The dominance-minimal members of `osh(C([n],a) ∪ C([n],a+d))`, realized,
/// deduplicated, restricted to `[n]`, in canonical set order.
pub fn minimal_sets(p: &TwoLevelParams) -> Vec<MinimalSet> {
    let kinds = match p.d {
        1 => kinds_d1(p),
        2 => kinds_d2(p),
        _ => kinds_wide(p),
    };
    let mut out: Vec<MinimalSet> = kinds
        .into_iter()
        .filter_map(|kind| kind.realize(p.d).map(|set| MinimalSet { kind, set }))
        .filter(|m| m.set.fits(p.n))
        .collect();
    out.sort_by_key(|m| m.set);
    out.dedup_by_key(|m| m.set);
    out
}

/// `d = 1` is two consecutive levels: the 1-ballot sets up to the size cut.
fn kinds_d1(p: &TwoLevelParams) -> Vec<MinimalSetKind> {
    let cut = ballot::consecutive_size_cut(p.n, p.a + 1, 2);
    (0..=cut)
        .map(|m| MinimalSetKind::BallotMin { t: 1, m })
        .collect()
}

fn kinds_d2(p: &TwoLevelParams) -> Vec<MinimalSetKind> {
    let n = p.n;
    // The complement family has levels n-a-2 and n-a and the same closure.
    let a = if 2 * p.a + 2 > n { n - p.a - 2 } else { p.a };
    let mut kinds = vec![MinimalSetKind::D2Empty, MinimalSetKind::D2Two];
    if n >= a + 3 {
        kinds.push(MinimalSetKind::D2TwoThree);
    }
    kinds.extend((2..=(a + 1).min(n - a - 1)).map(MinimalSetKind::D2Sk));
    kinds
}

fn kinds_wide(p: &TwoLevelParams) -> Vec<MinimalSetKind> {
    let (n, a, d) = (p.n, p.a, p.d);
    let mut kinds = Vec::new();
    for m in 0..=a {
        let mut j = 0;
        while (j as i64) < p.m1(m) {
            kinds.push(MinimalSetKind::Smj(m, j));
            j += 1;
        }
        let mut r = 0;
        while d as i64 <= p.m2(m, r) {
            kinds.push(MinimalSetKind::SPrime(m, r));
            r += 1;
        }
    }
    kinds.extend((0..=p.ballot_bound()).map(MinimalSetKind::B));
    if p.straddles_middle() {
        let bound = a.max(n - a - d);
        for m in 0..=a {
            for j in 1..d {
                // 2m+2j <= 2m+d+j-1 is j <= d-1; the top must stay inside [n].
                if m + j > bound && 2 * m + d + j - 1 <= n {
                    kinds.push(MinimalSetKind::Bmj(m, j));
                }
            }
        }
    }
    kinds
}

/// Membership in `osh(C([n],a) ∪ C([n],a+d))` through the minimal sets.
#[derive(Clone, Debug)]
pub struct TwoLevelClosure {
    pub params: TwoLevelParams,
    pub minimal: Vec<MinimalSet>,
}

impl TwoLevelClosure {
    pub fn new(params: TwoLevelParams) -> Self {
        TwoLevelClosure {
            minimal: minimal_sets(&params),
            params,
        }
    }

    /// A minimal set dominated by `s`, if any.
    pub fn dominating_minimal(&self, s: ElementSet) -> Option<&MinimalSet> {
        if !s.fits(self.params.n) {
            return None;
        }
        self.minimal.iter().find(|m| prec_leq(m.set, s))
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.dominating_minimal(s).is_some()
    }

    /// Every member, by enumerating `P([n])`.
    pub fn members(&self) -> Result<SetFamily> {
        let n = self.params.n;
        crate::family::check_cap(n, crate::family::DEFAULT_MAX_GROUND)?;
        let members = (0..1u64 << n)
            .map(ElementSet::from_bits)
            .filter(|&s| self.contains(s))
            .collect();
        Ok(SetFamily::from_distinct_unchecked(n, members))
    }
}

/// Whether `s` is order shattered by `C([n],a) ∪ C([n],a+d)`.
pub fn membership(s: ElementSet, p: &TwoLevelParams) -> bool {
    TwoLevelClosure::new(*p).contains(s)
}

/// Sets obtained from `t` by lowering one element by one, keeping it a set of
/// positive integers. These are exactly the sets covered by `t` in dominance.
pub fn lower_covers(t: ElementSet) -> Vec<ElementSet> {
    let elems = t.to_vec();
    (0..elems.len())
        .filter(|&i| {
            let e = elems[i];
            e > 1 && (i == 0 || elems[i - 1] + 1 < e)
        })
        .map(|i| t.without(elems[i]).with(elems[i] - 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::osh_via_shift;

    fn s(v: &[u32]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    fn p(n: u32, a: u32, d: u32) -> TwoLevelParams {
        TwoLevelParams::new(n, a, d).unwrap()
    }

    #[test]
    fn params_validate() {
        assert!(TwoLevelParams::new(4, 2, 3).is_err());
        assert!(TwoLevelParams::new(4, 1, 0).is_err());
        assert!(TwoLevelParams::new(4, 1, 3).is_ok());
    }

    #[test]
    fn tmin_bound_examples() {
        assert_eq!(tmin_bound(&p(9, 1, 3)), 2);
        assert_eq!(tmin_bound(&p(6, 1, 2)), 2);
        assert_eq!(tmin_bound(&p(4, 0, 3)), 0);
    }

    #[test]
    fn realize_examples() {
        assert_eq!(
            MinimalSetKind::Smj(1, 1).realize(3),
            Some(s(&[2, 5, 6, 7, 8]))
        );
        assert_eq!(
            MinimalSetKind::SPrime(0, 1).realize(3),
            Some(s(&[3, 4, 5, 6, 7, 9, 11]))
        );
        assert_eq!(MinimalSetKind::Bmj(1, 2).realize(4), Some(s(&[2, 6, 7])));
        assert_eq!(
            MinimalSetKind::D2Sk(4).realize(2),
            Some(s(&[2, 3, 4, 6, 8]))
        );
        assert_eq!(
            MinimalSetKind::BallotMin { t: 1, m: 3 }.realize(1),
            Some(s(&[1, 3, 5]))
        );
        assert_eq!(MinimalSetKind::B(40).realize(3), None);
    }

    #[test]
    fn t_min_of_named_sets() {
        for d in 3..=6 {
            for m in 0..4 {
                for j in 0..d {
                    assert_eq!(t_min(MinimalSetKind::Smj(m, j).realize(d).unwrap()), j + 1);
                }
                for r in 0..3 {
                    assert_eq!(t_min(MinimalSetKind::SPrime(m, r).realize(d).unwrap()), d);
                }
            }
        }
    }

    #[test]
    fn minimal_examples() {
        let sets: Vec<_> = minimal_sets(&p(6, 1, 2))
            .into_iter()
            .map(|m| m.set)
            .collect();
        assert_eq!(sets, vec![s(&[]), s(&[2]), s(&[2, 3]), s(&[2, 3, 4])]);
        let wide = minimal_sets(&p(9, 1, 3));
        for m in 0..=4 {
            assert!(wide.iter().any(|x| x.kind == MinimalSetKind::B(m)));
        }
        assert!(!wide.iter().any(|x| x.kind == MinimalSetKind::B(5)));
        assert!(!wide
            .iter()
            .any(|x| matches!(x.kind, MinimalSetKind::Bmj(..))));
    }

    #[test]
    fn membership_examples() {
        let q = p(6, 1, 2);
        assert!(membership(s(&[3, 5]), &q));
        assert!(!membership(s(&[1, 4]), &q));
        assert!(membership(ElementSet::EMPTY, &q));
    }

    #[test]
    fn lower_covers_examples() {
        assert_eq!(lower_covers(s(&[2, 3])), vec![s(&[1, 3])]);
        assert_eq!(lower_covers(s(&[1, 2])), vec![]);
        assert_eq!(lower_covers(s(&[2, 5])).len(), 2);
    }

    #[test]
    fn closed_form_matches_shift_small() {
        for n in 1..=8 {
            for d in 1..=n {
                for a in 0..=n - d {
                    let q = p(n, a, d);
                    let osh = osh_via_shift(&q.family().unwrap());
                    assert_eq!(TwoLevelClosure::new(q).members().unwrap(), osh, "{q:?}");
                }
            }
        }
    }
}
