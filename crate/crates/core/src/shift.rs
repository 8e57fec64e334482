//! Down-shifts `T_j` and the shifted family `T(F) = T_n(...T_1(F)...)`.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::ElementSet;
use crate::shatter::ShatterWitness;

/// Every intermediate family of a full shift: `stages[h]` is `T_h(...T_1(F)...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftTrace {
    pub stages: Vec<SetFamily>,
}

impl ShiftTrace {
    /// `T(F)`.
    pub fn final_stage(&self) -> &SetFamily {
        self.stages
            .last()
            .expect("a trace always holds the input stage")
    }

    pub fn contains(&self, stage: usize, s: ElementSet) -> bool {
        self.stages[stage].contains(s)
    }

    pub fn into_final(mut self) -> SetFamily {
        self.stages
            .pop()
            .expect("a trace always holds the input stage")
    }
}

/// `T_j(f)`: each member containing `j` loses it unless that removal is
/// already a member. Membership is read from `f` itself, not from the partly
/// built image.
pub fn shift_element(f: &SetFamily, j: u32) -> Result<SetFamily> {
    if j == 0 || j > f.ground() {
        return Err(Error::InvalidElement {
            element: j,
            n: f.ground(),
        });
    }
    Ok(shift_unchecked(f, j))
}

fn shift_unchecked(f: &SetFamily, j: u32) -> SetFamily {
    let image = f
        .iter()
        .map(|&b| {
            let down = b.without(j);
            if b.contains(j) && !f.contains(down) {
                down
            } else {
                b
            }
        })
        .collect();
    SetFamily::from_distinct_unchecked(f.ground(), image)
}

/// Applies `T_1, ..., T_n` in order, keeping all `n + 1` stages.
pub fn shift_full(f: &SetFamily) -> ShiftTrace {
    let mut stages = Vec::with_capacity(f.ground() as usize + 1);
    stages.push(f.clone());
    for j in 1..=f.ground() {
        let next = shift_unchecked(stages.last().expect("nonempty"), j);
        stages.push(next);
    }
    ShiftTrace { stages }
}

/// `T(F)` keeping only the current stage.
pub fn shift_final(f: &SetFamily) -> SetFamily {
    (1..=f.ground()).fold(f.clone(), |cur, j| shift_unchecked(&cur, j))
}

/// Order-shattered sets computed as the shifted family.
pub fn osh_via_shift(f: &SetFamily) -> SetFamily {
    shift_final(f)
}

/// For every `h` in `[n + 1]` and every witness member `G`,
/// `G ∩ (S_i ∪ [h, n])` lies in stage `h - 1`, where `S_i` is the part of the
/// target below `h`.
pub fn check_stage_invariant(f: &SetFamily, w: &ShatterWitness) -> bool {
    check_stage_invariant_in(&shift_full(f), w)
}

/// Same as [`check_stage_invariant`] against an already computed trace.
pub fn check_stage_invariant_in(trace: &ShiftTrace, w: &ShatterWitness) -> bool {
    let n = trace.final_stage().ground();
    (1..=n + 1).all(|h| {
        let below = w.target.up_to(h - 1);
        let mask = below | ElementSet::interval(h, n);
        let stage = &trace.stages[h as usize - 1];
        w.ordered.iter().all(|&g| stage.contains(g & mask))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shatter::{extract_witness, osh_direct};

    fn s(v: &[u32]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    fn fam(n: u32, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|v| s(v))).unwrap()
    }

    #[test]
    fn shift_element_examples() {
        assert_eq!(
            shift_element(&fam(2, &[&[1], &[2]]), 1).unwrap(),
            fam(2, &[&[], &[2]])
        );
        let down = fam(2, &[&[], &[1]]);
        assert_eq!(shift_element(&down, 1).unwrap(), down);
        assert_eq!(
            shift_element(&fam(2, &[&[1, 2]]), 2).unwrap(),
            fam(2, &[&[1]])
        );
        assert_eq!(
            shift_element(&down, 3),
            Err(Error::InvalidElement { element: 3, n: 2 })
        );
        assert!(shift_element(&down, 0).is_err());
    }

    #[test]
    fn shift_full_examples() {
        let t = shift_full(&fam(2, &[&[1], &[2]]));
        assert_eq!(
            t.stages,
            vec![
                fam(2, &[&[1], &[2]]),
                fam(2, &[&[], &[2]]),
                fam(2, &[&[], &[2]])
            ]
        );
        assert_eq!(shift_full(&fam(2, &[&[1, 2]])).into_final(), fam(2, &[&[]]));
        let p2 = SetFamily::power_set(2).unwrap();
        assert!(shift_full(&p2).stages.iter().all(|st| *st == p2));
    }

    #[test]
    fn osh_via_shift_examples() {
        assert_eq!(osh_via_shift(&fam(2, &[&[1], &[2]])), fam(2, &[&[], &[2]]));
        assert_eq!(osh_via_shift(&fam(2, &[&[1, 2]])), fam(2, &[&[]]));
        let p3 = SetFamily::power_set(3).unwrap();
        assert_eq!(osh_via_shift(&p3), p3);
    }

    #[test]
    fn stage_invariant_examples() {
        let f = fam(2, &[&[1], &[2]]);
        let w = extract_witness(&f, s(&[2])).unwrap();
        assert!(check_stage_invariant(&f, &w));
        let p2 = SetFamily::power_set(2).unwrap();
        let w = extract_witness(&p2, s(&[1, 2])).unwrap();
        assert!(check_stage_invariant(&p2, &w));
    }

    #[test]
    fn equivalence_exhaustive_up_to_3() {
        for n in 0..=3u32 {
            for code in 0u64..1 << (1u32 << n) {
                let members: Vec<_> = (0..1u64 << n)
                    .filter(|&m| code >> m & 1 == 1)
                    .map(ElementSet::from_bits)
                    .collect();
                let f = SetFamily::new(n, members).unwrap();
                assert_eq!(osh_via_shift(&f), osh_direct(&f).unwrap(), "{f:?}");
            }
        }
    }
}
