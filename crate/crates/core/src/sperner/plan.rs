//! Assembling a witness for an arbitrary feasible target.
//!
//! The induction runs over the block encoding of the target. Each level either
//! starts from a single block, adds a short final block after a gap, or grows
//! the previous block and then spreads it across the gap. The whole sequence
//! of steps is planned first so the largest ground is known before anything
//! is allocated.

use std::fmt;

use crate::blocks::{decode_blocks, encode_blocks};
use crate::error::{Error, Result};
use crate::set::ElementSet;

use super::lemmas::{
    check_ground, extend_consecutive_capped, extend_with_gap_capped, single_block_capped,
};
use super::{criterion_holds, criterion_sum, SpernerWitness};

/// Ground cap used by [`construct_sperner_witness`]. Witnesses have
/// `2^|target|` members, so the ground also bounds memory.
pub const SPERNER_MAX_GROUND: u32 = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanStep {
    /// `[g+1, g + ell*2^g - 1]` from scratch.
    SingleBlock { g: u32, ell: u32 },
    /// Cut down to a subset of the current target and normalize.
    Restrict(ElementSet),
    /// Append `2^g - 1` consecutive elements after a gap of `g`.
    ExtendWithGap { g: u32 },
    /// Spread the final `r + 1` elements across a gap of `g`.
    ExtendConsecutive { g: u32, r: u32 },
}

impl fmt::Display for PlanStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanStep::SingleBlock { g, ell } => write!(f, "single-block g={g} ell={ell}"),
            PlanStep::Restrict(s) => write!(f, "restrict to {s}"),
            PlanStep::ExtendWithGap { g } => write!(f, "extend-with-gap g={g}"),
            PlanStep::ExtendConsecutive { g, r } => write!(f, "extend-consecutive g={g} r={r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub target: ElementSet,
    pub ell: u32,
    pub steps: Vec<PlanStep>,
    /// Largest ground reached by any intermediate witness.
    pub max_ground: u32,
}

/// Plans the construction for `a`, failing early if the criterion fails or
/// some intermediate ground exceeds `cap`.
pub fn plan_construction(a: ElementSet, ell: u32, cap: u32) -> Result<ConstructionPlan> {
    if ell == 0 {
        return Err(Error::InvalidParams("ell must be positive".into()));
    }
    if !criterion_holds(a, ell) {
        return Err(Error::CriterionFails {
            sum: criterion_sum(a),
            ell,
        });
    }
    let mut plan = ConstructionPlan {
        target: a,
        ell,
        steps: Vec::new(),
        max_ground: 0,
    };
    if !a.is_empty() {
        plan_into(a, cap, &mut plan)?;
    }
    Ok(plan)
}

fn pow2(g: u32) -> u64 {
    1u64 << g.min(63)
}

fn push(plan: &mut ConstructionPlan, step: PlanStep, ground: u64, cap: u32) -> Result<()> {
    let ground = check_ground(ground, cap)?;
    plan.max_ground = plan.max_ground.max(ground);
    plan.steps.push(step);
    Ok(())
}

fn restrict_if_needed(plan: &mut ConstructionPlan, built: ElementSet, a: ElementSet) {
    if built != a {
        plan.steps.push(PlanStep::Restrict(a));
    }
}

/// Appends the steps producing a normalized witness for `a` (nonempty, criterion holds).
fn plan_into(a: ElementSet, cap: u32, plan: &mut ConstructionPlan) -> Result<()> {
    let enc = encode_blocks(a)?;
    let last = enc.last();
    let (g, b) = (last.gap, last.len);
    let Some(prefix_enc) = enc.without_last() else {
        // One block [g+1, g+b]: the smallest ell' with b <= ell'*2^g - 1 suffices,
        // and an ell'-Sperner family is also ell-Sperner.
        let ell_base = (b as u64 / pow2(g) + 1) as u32;
        let top = g as u64 + ell_base as u64 * pow2(g) - 1;
        push(plan, PlanStep::SingleBlock { g, ell: ell_base }, top, cap)?;
        restrict_if_needed(plan, ElementSet::interval(g + 1, top as u32), a);
        return Ok(());
    };
    let prefix = decode_blocks(&prefix_enc)?;
    let at = prefix.max().expect("prefix is nonempty");
    if (b as u64) < pow2(g) {
        plan_into(prefix, cap, plan)?;
        let top = at as u64 + g as u64 + pow2(g) - 1;
        push(plan, PlanStep::ExtendWithGap { g }, top, cap)?;
        restrict_if_needed(
            plan,
            prefix | ElementSet::interval(at + g + 1, top as u32),
            a,
        );
    } else {
        // Grow the previous block by bb - 1, then spread it over the gap.
        let bb = (b as u64 + 1).div_ceil(pow2(g));
        let grown_top = check_ground(at as u64 + bb - 1, cap)?;
        let grown = prefix | ElementSet::interval(at + 1, grown_top);
        debug_assert!(criterion_holds(grown, plan.ell));
        plan_into(grown, cap, plan)?;
        let top = at as u64 + g as u64 + bb * pow2(g) - 1;
        push(
            plan,
            PlanStep::ExtendConsecutive {
                g,
                r: (bb - 1) as u32,
            },
            top,
            cap,
        )?;
        restrict_if_needed(
            plan,
            prefix | ElementSet::interval(at + g + 1, top as u32),
            a,
        );
    }
    Ok(())
}

/// Runs a plan. The result is normalized and carries the plan's `ell`.
pub fn execute_plan(plan: &ConstructionPlan, cap: u32) -> Result<SpernerWitness> {
    let mut cur: Option<SpernerWitness> = None;
    for step in &plan.steps {
        let next = match (*step, cur.as_ref()) {
            (PlanStep::SingleBlock { g, ell }, _) => single_block_capped(g, ell, cap)?,
            (PlanStep::Restrict(s), Some(w)) => w.restrict(s)?,
            (PlanStep::ExtendWithGap { g }, Some(w)) => extend_with_gap_capped(w, g, cap)?,
            (PlanStep::ExtendConsecutive { g, r }, Some(w)) => {
                extend_consecutive_capped(w, g, r, cap)?
            }
            (step, None) => {
                return Err(Error::InvalidParams(format!("plan starts with `{step}`")));
            }
        };
        cur = Some(next);
    }
    let family = match cur {
        Some(w) => w.family,
        None => crate::family::SetFamily::new(0, [ElementSet::EMPTY])?,
    };
    Ok(SpernerWitness::new(plan.target, plan.ell, family))
}

/// A witness for `a` under [`SPERNER_MAX_GROUND`].
pub fn construct_sperner_witness(a: ElementSet, ell: u32) -> Result<SpernerWitness> {
    construct_sperner_witness_with(a, ell, SPERNER_MAX_GROUND)
}

/// A witness for `a` whose construction never exceeds ground `cap`.
pub fn construct_sperner_witness_with(a: ElementSet, ell: u32, cap: u32) -> Result<SpernerWitness> {
    let plan = plan_construction(a, ell, cap)?;
    execute_plan(&plan, cap)
}
