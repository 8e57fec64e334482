//! Exhaustive search over all l-Sperner families on a small ground.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::ElementSet;
use crate::shatter::OrderShatterIndex;

/// Outcome of [`search_sperner_families`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpernerSearch {
    /// Number of l-Sperner families visited.
    pub families_checked: u64,
    /// The first visited family that order shatters the target.
    pub witness: Option<SetFamily>,
}

/// Largest ground the search accepts for a given `ell`.
pub fn search_limit(ell: u32) -> u32 {
    if ell == 1 {
        5
    } else {
        4
    }
}

struct Search {
    order: Vec<u64>,
    ell: u8,
    /// `down[X]`: longest chain of chosen sets inside `X`.
    down: Vec<u8>,
    chosen: Vec<u64>,
    need: usize,
    target: ElementSet,
    stop_at_first: bool,
    checked: u64,
    witness: Option<Vec<u64>>,
}

impl Search {
    /// Returns true to abort the whole search.
    fn run(&mut self, idx: usize) -> bool {
        let Some(&x) = self.order.get(idx) else {
            self.checked += 1;
            if self.chosen.len() >= self.need
                && self.witness.is_none()
                && OrderShatterIndex::from_sets(
                    self.chosen.iter().map(|&m| ElementSet::from_bits(m)),
                )
                .order_shatters(self.target)
            {
                self.witness = Some(self.chosen.clone());
                return self.stop_at_first;
            }
            return false;
        };
        let mut below = 0u8;
        let mut rest = x;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            below = below.max(self.down[(x ^ bit) as usize]);
            rest ^= bit;
        }
        self.down[x as usize] = below;
        if self.run(idx + 1) {
            return true;
        }
        if below < self.ell {
            self.down[x as usize] = below + 1;
            self.chosen.push(x);
            if self.run(idx + 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// Visits every l-Sperner family inside `P([n])` (subsets decided in canonical
/// order, pruned by the chain bound) and tests each against `a`.
pub fn search_sperner_families(
    a: ElementSet,
    n: u32,
    ell: u32,
    stop_at_first: bool,
) -> Result<SpernerSearch> {
    if ell == 0 {
        return Err(Error::InvalidParams("ell must be positive".into()));
    }
    let limit = search_limit(ell);
    if n > limit {
        return Err(Error::GroundTooLarge { n, cap: limit });
    }
    if !a.fits(n) {
        return Err(Error::ElementOutOfRange {
            element: a.max().unwrap_or(0),
            n,
        });
    }
    let order: Vec<u64> = SetFamily::power_set(n)?.iter().map(|m| m.bits()).collect();
    let mut search = Search {
        down: vec![0; order.len()],
        order,
        ell: ell.min(u8::MAX as u32) as u8,
        chosen: Vec::new(),
        need: 1 << a.len(),
        target: a,
        stop_at_first,
        checked: 0,
        witness: None,
    };
    search.run(0);
    let witness = search.witness.map(|w| {
        SetFamily::from_distinct_unchecked(n, w.into_iter().map(ElementSet::from_bits).collect())
    });
    Ok(SpernerSearch {
        families_checked: search.checked,
        witness,
    })
}

/// True when no l-Sperner family inside `P([n])` order shatters `a`.
pub fn exhaustive_nonexistence(a: ElementSet, n: u32, ell: u32) -> Result<bool> {
    Ok(search_sperner_families(a, n, ell, true)?.witness.is_none())
}
