//! l-Sperner families that order shatter a target set.
//!
//! A target `A = {a_1 < ... < a_k}` is order shattered by some l-Sperner
//! family exactly when `sum 2^-(a_i - i) < l`. The lemmas build such families
//! block by block and the planner in [`plan`] strings them together.

mod lemmas;
mod oracle;
mod plan;

pub use lemmas::{
    construct_single_block, extend_consecutive, extend_with_gap, shift_and_extend, shift_back,
    shift_back_by_gap,
};
pub use oracle::{exhaustive_nonexistence, search_limit, search_sperner_families, SpernerSearch};
pub use plan::{
    construct_sperner_witness, construct_sperner_witness_with, execute_plan, plan_construction,
    ConstructionPlan, PlanStep, SPERNER_MAX_GROUND,
};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::family::{is_l_sperner, SetFamily};
use crate::set::ElementSet;
use crate::shatter::{extract_witness, order_shatters};

/// `sum_i 2^-(a_i - i)` over the elements of `a` in increasing order.
pub fn criterion_sum(a: ElementSet) -> DyadicRational {
    a.iter()
        .zip(1u32..)
        .map(|(e, i)| DyadicRational::unit_fraction(e - i))
        .sum()
}

/// Exact `criterion_sum(a) < ell`.
pub fn criterion_holds(a: ElementSet, ell: u32) -> bool {
    assert!(ell >= 1, "ell must be positive");
    criterion_sum(a).lt_integer(ell as u64)
}

/// An l-Sperner family of exactly `2^|target|` sets that order shatters `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpernerWitness {
    pub target: ElementSet,
    pub ell: u32,
    pub family: SetFamily,
}

impl SpernerWitness {
    pub fn new(target: ElementSet, ell: u32, family: SetFamily) -> Self {
        SpernerWitness {
            target,
            ell,
            family,
        }
    }

    /// Ground size of the family.
    pub fn n(&self) -> u32 {
        self.family.ground()
    }

    /// All three witness properties, recomputed from scratch.
    pub fn verify(&self) -> bool {
        self.check().is_ok()
    }

    /// Like [`SpernerWitness::verify`] but names the property that fails.
    pub fn check(&self) -> Result<()> {
        let k = self.target.len();
        if k >= 63 || self.family.len() as u128 != 1u128 << k {
            return Err(Error::BoundViolated(format!(
                "family has {} sets, expected 2^{k}",
                self.family.len()
            )));
        }
        if self.ell == 0 || !is_l_sperner(&self.family, self.ell) {
            return Err(Error::BoundViolated(format!(
                "family is not {}-Sperner",
                self.ell
            )));
        }
        if !order_shatters(&self.family, self.target) {
            return Err(Error::BoundViolated(format!(
                "family does not order shatter {}",
                self.target
            )));
        }
        Ok(())
    }

    /// Whether the family lives exactly on `[max(target)]`.
    pub fn is_normalized(&self) -> bool {
        self.n() == self.target.max().unwrap_or(0)
    }

    /// A witness for `sub ⊆ target`, cut down to its standard-order subfamily
    /// and with the common trace above `max(sub)` removed.
    pub fn restrict(&self, sub: ElementSet) -> Result<SpernerWitness> {
        if !sub.is_subset_of(self.target) {
            return Err(Error::ShapeMismatch {
                target: sub,
                reason: format!("not a subset of {}", self.target),
            });
        }
        let w = extract_witness(&self.family, sub).ok_or_else(|| Error::ShapeMismatch {
            target: sub,
            reason: "not order shattered by the family".into(),
        })?;
        let top = sub.max().unwrap_or(0);
        let mask = ElementSet::full(top);
        // Standard-order members agree above `top`, so masking keeps them distinct.
        let family = SetFamily::new(top, w.ordered.iter().map(|&g| g & mask))?;
        Ok(SpernerWitness::new(sub, self.ell, family))
    }

    /// [`SpernerWitness::restrict`] to the whole target.
    pub fn normalize(&self) -> Result<SpernerWitness> {
        if self.is_normalized() {
            return Ok(self.clone());
        }
        self.restrict(self.target)
    }
}
