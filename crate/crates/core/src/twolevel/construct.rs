//! Explicit subfamilies of two complete levels that order shatter the
//! non-ballot minimal sets and the sets `B_{m,j}`.
//!
//! Every construction is a product: a transversal family on `[2m]`, one choice
//! `G_I ∪ I` per subset `I` of a run, and optionally a second transversal
//! family and a fixed padding set `J`. Free choices always take the lowest
//! eligible elements.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::ElementSet;
use crate::shatter::ShatterWitness;

use super::{MinimalSetKind, TwoLevelParams};

/// Largest `log2` of a constructed family.
const MAX_LOG_SIZE: u32 = 24;

/// The `k` smallest elements of `s`.
fn lowest(s: ElementSet, k: u32) -> ElementSet {
    debug_assert!(k <= s.len());
    ElementSet::from_elements(s.iter().take(k as usize))
}

/// All sets meeting each pair `{base + 2i - 1, base + 2i}`, `i = 1..=count`, once.
fn transversals(base: u32, count: u32) -> Vec<ElementSet> {
    (0..1u64 << count)
        .map(|choice| {
            ElementSet::from_elements(
                (1..=count).map(|i| base + 2 * i - u32::from(choice >> (i - 1) & 1 == 0)),
            )
        })
        .collect()
}

/// The `2^m` transversals of `{1,2}, {3,4}, ..., {2m-1,2m}`, a subfamily of
/// `C([2m], m)` that order shatters `{2, 4, ..., 2m}`.
pub fn construct_claim_even(m: u32) -> Result<SetFamily> {
    check_size(2 * m, m)?;
    SetFamily::new(2 * m, transversals(0, m))
}

fn check_size(n: u32, log_size: u32) -> Result<()> {
    crate::family::check_ground(n)?;
    if log_size > MAX_LOG_SIZE {
        return Err(Error::InvalidParams(format!(
            "family would have 2^{log_size} members, more than 2^{MAX_LOG_SIZE}"
        )));
    }
    Ok(())
}

fn wide(p: &TwoLevelParams) -> Result<()> {
    if p.d <= 2 {
        return Err(Error::InvalidParams(format!(
            "construction needs d > 2, got d={}",
            p.d
        )));
    }
    Ok(())
}

/// Shared product. `low` is the size of `G_I ∪ I` that lands on level `a`.
struct Product {
    n: u32,
    d: u32,
    m: u32,
    run: ElementSet,
    gap: ElementSet,
    low: u32,
    tail: Vec<ElementSet>,
    pad: ElementSet,
}

impl Product {
    fn build(&self) -> Result<SetFamily> {
        let heads = transversals(0, self.m);
        let runs: Vec<ElementSet> = crate::combin::subsets(self.run)
            .map(|i| {
                let k = if i.len() <= self.low {
                    self.low - i.len()
                } else {
                    self.low + self.d - i.len()
                };
                lowest(self.gap, k) | i
            })
            .collect();
        let mut members = Vec::with_capacity(heads.len() * runs.len() * self.tail.len());
        for &h in &heads {
            for &r in &runs {
                for &t in &self.tail {
                    members.push(h | r | t | self.pad);
                }
            }
        }
        SetFamily::new(self.n, members)
    }
}

/// Splits `total` into `x <= d - 1` and `y = total - x`, with `x = d - 1` whenever `y > 0`.
fn split(total: u32, d: u32) -> (u32, u32) {
    let x = total.min(d - 1);
    (x, total - x)
}

/// A subfamily of the two levels of size `2^(m+d+j)` order shattering `S_{m,j}`.
pub fn construct_s_mj(p: &TwoLevelParams, m: u32, j: u32) -> Result<SetFamily> {
    wide(p)?;
    let m1 = p.m1(m);
    if j as i64 + 1 > m1 || m > p.a {
        return Err(Error::BoundViolated(format!(
            "S_{m},{j} needs j + 1 <= M_1 = {m1} for n={} a={} d={}",
            p.n, p.a, p.d
        )));
    }
    let (n, a, d) = (p.n, p.a, p.d);
    check_size(n, m + d + j)?;
    let (x, y) = split(a - m, d);
    Product {
        n,
        d,
        m,
        run: ElementSet::interval(2 * m + d, 2 * m + 2 * d + j - 1),
        gap: ElementSet::interval(2 * m + 1, 2 * m + d - 1),
        low: x,
        tail: vec![ElementSet::EMPTY],
        pad: lowest(ElementSet::interval(2 * m + 2 * d + j, n), y),
    }
    .build()
}

/// A subfamily of the two levels of size `2^(m+2d+r)` order shattering `S'_{m,r}`.
pub fn construct_sprime_mr(p: &TwoLevelParams, m: u32, r: u32) -> Result<SetFamily> {
    wide(p)?;
    let m2 = p.m2(m, r);
    if (p.d as i64) > m2 {
        return Err(Error::BoundViolated(format!(
            "S'_{m},{r} needs d <= M_2 = {m2} for n={} a={} d={}",
            p.n, p.a, p.d
        )));
    }
    let (n, a, d) = (p.n, p.a, p.d);
    check_size(n, m + 2 * d + r)?;
    let (x, y) = split(a - m - r - 1, d);
    Product {
        n,
        d,
        m,
        run: ElementSet::interval(2 * m + d, 2 * m + 3 * d - 2),
        gap: ElementSet::interval(2 * m + 1, 2 * m + d - 1),
        low: x,
        tail: transversals(2 * m + 3 * d - 2, r + 1),
        pad: lowest(ElementSet::interval(2 * m + 3 * d + 2 * r + 1, n), y),
    }
    .build()
}

/// A subfamily of the two levels of size `2^(m+j)` order shattering `B_{m,j}`.
pub fn construct_b_mj(p: &TwoLevelParams, m: u32, j: u32) -> Result<SetFamily> {
    wide(p)?;
    let (n, a, d) = (p.n, p.a, p.d);
    let bound = a.max(n - a - d);
    let ok = p.straddles_middle()
        && m <= a
        && j >= 1
        && m + j > bound
        && j < d
        && 2 * m + d + j - 1 <= n;
    if !ok {
        return Err(Error::BoundViolated(format!(
            "B_{m},{j} is outside the admissible range for n={n} a={a} d={d}"
        )));
    }
    check_size(n, m + j)?;
    Product {
        n,
        d,
        m,
        run: ElementSet::interval(2 * m + d, 2 * m + d + j - 1),
        gap: ElementSet::interval(2 * m + 1, 2 * m + d - 1),
        low: a - m,
        tail: vec![ElementSet::EMPTY],
        pad: ElementSet::EMPTY,
    }
    .build()
}

/// A subfamily of the two levels of size `2^m` order shattering `B_m`: the
/// transversals of `[2m]` padded with the lowest elements above `2m` up to a level.
pub fn construct_b_m(p: &TwoLevelParams, m: u32) -> Result<SetFamily> {
    let (n, a, d) = (p.n, p.a, p.d);
    let pad = if m <= a.min(n - a) {
        a - m
    } else if m <= (a + d).min(n - a - d) {
        a + d - m
    } else {
        return Err(Error::BoundViolated(format!(
            "B_{m} needs m <= {} for n={n} a={a} d={d}",
            p.ballot_bound()
        )));
    };
    check_size(n, m)?;
    let pad = lowest(ElementSet::interval(2 * m + 1, n), pad);
    SetFamily::new(n, transversals(0, m).into_iter().map(|g| g | pad))
}

/// The construction matching a minimal set kind, when there is one.
pub fn construct_for(p: &TwoLevelParams, kind: MinimalSetKind) -> Option<Result<SetFamily>> {
    match kind {
        MinimalSetKind::Smj(m, j) => Some(construct_s_mj(p, m, j)),
        MinimalSetKind::SPrime(m, r) => Some(construct_sprime_mr(p, m, r)),
        MinimalSetKind::Bmj(m, j) => Some(construct_b_mj(p, m, j)),
        MinimalSetKind::B(m) => Some(construct_b_m(p, m)),
        _ => None,
    }
}

/// Every member of the witness meets `[2m]` in exactly `m` elements.
pub fn equal_prefix_check(w: &ShatterWitness, m: u32) -> bool {
    let prefix = ElementSet::full(2 * m);
    w.ordered.iter().all(|&g| (g & prefix).len() == m)
}
