//! Seeded, reproducible verification suites.
//!
//! Every suite expands its parameters into an indexed list of instances, checks
//! them in parallel and reports the failure with the smallest index, so the
//! report does not depend on scheduling.

use std::time::Instant;

use oshlab_core::sample::random_family;
use oshlab_core::shift::{check_stage_invariant_in, shift_full};
use oshlab_core::sperner::{search_limit, search_sperner_families};
use oshlab_core::twolevel::TwoLevelClosure;
use oshlab_core::{
    complement_family, construct_sperner_witness_with, criterion_holds, extract_witness,
    is_downset, is_l_sperner, order_shatters, osh_consecutive_levels, osh_direct_with,
    osh_via_shift, sh_all, st_all, verify_standard_order, ElementSet, Error, OrderShatterIndex,
    OshOptions, SetFamily, ShatterWitness, TwoLevelParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::doc::FamilyDocument;
use crate::error::{CliError, CliResult};

/// Largest `n` for which `--exhaustive` enumerates every family on `[n]`.
pub const EXHAUSTIVE_FAMILY_LIMIT: u32 = 4;

#[derive(Clone, Copy)]
enum Kind {
    /// Checks one family at a time; random or exhaustive corpus.
    Family(fn(&SetFamily, u32) -> Checked),
    /// Sweeps a parameter space for each `n`.
    Sweep(fn(u32, u32) -> Vec<Checked>),
}

struct SuiteDef {
    name: &'static str,
    about: &'static str,
    default_n: (u32, u32),
    kind: Kind,
}

const SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "shift-equals-osh",
        about: "the fully shifted family equals the direct order-shattering closure",
        default_n: (1, 6),
        kind: Kind::Family(check_shift_equals_osh),
    },
    SuiteDef {
        name: "cardinality-law",
        about: "|osh(F)| = |F|",
        default_n: (1, 6),
        kind: Kind::Family(check_cardinality),
    },
    SuiteDef {
        name: "sandwich-law",
        about: "st(F) ⊆ osh(F) ⊆ sh(F) and |st(F)| <= |F| <= |sh(F)|",
        default_n: (1, 6),
        kind: Kind::Family(check_sandwich),
    },
    SuiteDef {
        name: "idempotence",
        about: "osh(osh(F)) = osh(F)",
        default_n: (1, 6),
        kind: Kind::Family(check_idempotence),
    },
    SuiteDef {
        name: "complement-invariance",
        about: "osh(F) = osh(F^c)",
        default_n: (1, 6),
        kind: Kind::Family(check_complement),
    },
    SuiteDef {
        name: "downset-law",
        about: "sh(F), st(F) and osh(F) are downsets",
        default_n: (1, 6),
        kind: Kind::Family(check_downsets),
    },
    SuiteDef {
        name: "witness-soundness",
        about: "every order-shattered set has a standard-order witness inside F",
        default_n: (1, 6),
        kind: Kind::Family(check_witnesses),
    },
    SuiteDef {
        name: "stage-invariant",
        about: "witness members stay in every intermediate shift stage",
        default_n: (1, 6),
        kind: Kind::Family(check_stage),
    },
    SuiteDef {
        name: "sperner-criterion",
        about: "constructed witnesses exist exactly for targets meeting the criterion (ell <= 3)",
        default_n: (0, 8),
        kind: Kind::Sweep(sweep_sperner_criterion),
    },
    SuiteDef {
        name: "sperner-converse",
        about: "no l-Sperner family inside P([n]) order shatters a target failing the criterion",
        default_n: (0, 5),
        kind: Kind::Sweep(sweep_sperner_converse),
    },
    SuiteDef {
        name: "consecutive-levels",
        about: "closed form for consecutive complete levels matches shifting (ell <= 4)",
        default_n: (0, 10),
        kind: Kind::Sweep(sweep_consecutive),
    },
    SuiteDef {
        name: "two-level-closed-form",
        about: "minimal-set membership for two complete levels matches shifting",
        default_n: (1, 12),
        kind: Kind::Sweep(sweep_two_level),
    },
];

/// Names and one-line descriptions of every suite.
pub fn suite_list() -> Vec<(&'static str, &'static str)> {
    SUITES.iter().map(|s| (s.name, s.about)).collect()
}

fn find(name: &str) -> CliResult<&'static SuiteDef> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CliError::UnknownSuite(name.to_string()))
}

/// Resolved suite parameters, echoed in the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub n_min: u32,
    pub n_max: u32,
    pub trials: u64,
    pub seed: u64,
    pub exhaustive: bool,
    pub density: f64,
    pub max_ground: u32,
}

/// Parameters as given on the command line; `None` means the suite default.
#[derive(Clone, Debug, Default)]
pub struct SuiteRequest {
    pub n: Option<u32>,
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    pub trials: u64,
    pub seed: u64,
    pub exhaustive: bool,
    pub density: f64,
    pub max_ground: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub family: FamilyDocument,
    pub target: Option<Vec<u32>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub passed: u64,
    pub failed: u64,
    /// Instances outside the configured caps.
    pub skipped: u64,
    pub counterexample: Option<Counterexample>,
    pub wall_time_secs: f64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Result of one instance.
#[derive(Clone, Debug)]
enum Checked {
    Pass,
    Skip,
    Fail(Box<Counterexample>),
}

fn fail(f: &SetFamily, target: Option<ElementSet>, detail: impl Into<String>) -> Checked {
    Checked::Fail(Box::new(Counterexample {
        family: FamilyDocument::from_family(f),
        target: target.map(|t| t.to_vec()),
        detail: detail.into(),
    }))
}

fn osh(f: &SetFamily, cap: u32) -> Result<SetFamily, Checked> {
    osh_direct_with(
        f,
        OshOptions {
            max_ground: cap,
            prune: false,
        },
    )
    .map_err(|_| Checked::Skip)
}

fn first_difference(a: &SetFamily, b: &SetFamily) -> Option<ElementSet> {
    a.iter()
        .find(|s| !b.contains(**s))
        .or_else(|| b.iter().find(|s| !a.contains(**s)))
        .copied()
}

fn check_shift_equals_osh(f: &SetFamily, cap: u32) -> Checked {
    let direct = match osh(f, cap) {
        Ok(d) => d,
        Err(c) => return c,
    };
    let shifted = osh_via_shift(f);
    match first_difference(&shifted, &direct) {
        None => Checked::Pass,
        Some(s) => fail(f, Some(s), "T(F) and osh(F) disagree on this set"),
    }
}

fn check_cardinality(f: &SetFamily, cap: u32) -> Checked {
    match osh(f, cap) {
        Ok(o) if o.len() == f.len() => Checked::Pass,
        Ok(o) => fail(
            f,
            None,
            format!("|osh(F)| = {} but |F| = {}", o.len(), f.len()),
        ),
        Err(c) => c,
    }
}

fn check_sandwich(f: &SetFamily, cap: u32) -> Checked {
    let o = match osh(f, cap) {
        Ok(o) => o,
        Err(c) => return c,
    };
    let (sh, st) = (sh_all(f), st_all(f));
    if let Some(s) = st.iter().find(|s| !o.contains(**s)) {
        return fail(f, Some(*s), "strongly traced but not order shattered");
    }
    if let Some(s) = o.iter().find(|s| !sh.contains(**s)) {
        return fail(f, Some(*s), "order shattered but not shattered");
    }
    if st.len() > f.len() || f.len() > sh.len() {
        return fail(
            f,
            None,
            format!(
                "|st| = {}, |F| = {}, |sh| = {}",
                st.len(),
                f.len(),
                sh.len()
            ),
        );
    }
    Checked::Pass
}

fn check_idempotence(f: &SetFamily, cap: u32) -> Checked {
    let once = match osh(f, cap) {
        Ok(o) => o,
        Err(c) => return c,
    };
    match osh(&once, cap) {
        Ok(twice) => match first_difference(&once, &twice) {
            None => Checked::Pass,
            Some(s) => fail(f, Some(s), "osh(osh(F)) differs from osh(F)"),
        },
        Err(c) => c,
    }
}

fn check_complement(f: &SetFamily, cap: u32) -> Checked {
    match (osh(f, cap), osh(&complement_family(f), cap)) {
        (Ok(a), Ok(b)) => match first_difference(&a, &b) {
            None => Checked::Pass,
            Some(s) => fail(f, Some(s), "osh(F) and osh(F^c) disagree on this set"),
        },
        _ => Checked::Skip,
    }
}

fn check_downsets(f: &SetFamily, cap: u32) -> Checked {
    let o = match osh(f, cap) {
        Ok(o) => o,
        Err(c) => return c,
    };
    for (name, g) in [("osh", o), ("sh", sh_all(f)), ("st", st_all(f))] {
        if !is_downset(&g) {
            return fail(f, None, format!("{name}(F) is not a downset"));
        }
    }
    Checked::Pass
}

fn check_witnesses(f: &SetFamily, cap: u32) -> Checked {
    if f.ground() > cap {
        return Checked::Skip;
    }
    for bits in 0..1u64 << f.ground() {
        let s = ElementSet::from_bits(bits);
        match extract_witness(f, s) {
            Some(w) => {
                if !verify_standard_order(&w) || !w.ordered.iter().all(|g| f.contains(*g)) {
                    return fail(
                        f,
                        Some(s),
                        "extracted witness is not a standard-order subfamily",
                    );
                }
            }
            None if order_shatters(f, s) => {
                return fail(f, Some(s), "order shattered but no witness was extracted");
            }
            None => {}
        }
    }
    Checked::Pass
}

fn check_stage(f: &SetFamily, cap: u32) -> Checked {
    let o = match osh(f, cap) {
        Ok(o) => o,
        Err(c) => return c,
    };
    let trace = shift_full(f);
    let index = OrderShatterIndex::new(f);
    for &s in o.iter() {
        let Some(ordered) = index.witness(s) else {
            return fail(f, Some(s), "no witness for an order-shattered set");
        };
        if !check_stage_invariant_in(&trace, &ShatterWitness::new(s, ordered, f.ground())) {
            return fail(f, Some(s), "stage invariant fails");
        }
    }
    Checked::Pass
}

fn sweep_sperner_criterion(n: u32, cap: u32) -> Vec<Checked> {
    let cases: Vec<(ElementSet, u32)> = (0..1u64 << n)
        .flat_map(|bits| (1..=3).map(move |ell| (ElementSet::from_bits(bits), ell)))
        .collect();
    cases
        .par_iter()
        .map(|&(a, ell)| {
            let holds = criterion_holds(a, ell);
            let empty = SetFamily::empty(n);
            match construct_sperner_witness_with(a, ell, cap) {
                Ok(w) => {
                    if !holds {
                        fail(
                            &w.family,
                            Some(a),
                            format!("built a witness although the criterion fails for ell={ell}"),
                        )
                    } else if w.family.len() as u128 != 1u128 << a.len()
                        || !is_l_sperner(&w.family, ell)
                        || !order_shatters(&w.family, a)
                    {
                        fail(
                            &w.family,
                            Some(a),
                            format!("witness for ell={ell} does not verify"),
                        )
                    } else {
                        Checked::Pass
                    }
                }
                Err(Error::CriterionFails { .. }) if !holds => Checked::Pass,
                Err(Error::GroundTooLarge { .. }) if holds => Checked::Skip,
                Err(e) => fail(&empty, Some(a), format!("ell={ell}: {e}")),
            }
        })
        .collect()
}

fn sweep_sperner_converse(n: u32, _cap: u32) -> Vec<Checked> {
    if n > search_limit(1) {
        return vec![Checked::Skip];
    }
    (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let a = ElementSet::from_bits(bits);
            let found = search_sperner_families(a, n, 1, true)
                .expect("n is within the search limit")
                .witness;
            match found {
                Some(w) if !criterion_holds(a, 1) => fail(
                    &w,
                    Some(a),
                    "an antichain order shatters a target failing the criterion",
                ),
                _ => Checked::Pass,
            }
        })
        .collect()
}

fn sweep_consecutive(n: u32, cap: u32) -> Vec<Checked> {
    if n > cap {
        return vec![Checked::Skip];
    }
    let mut cases = Vec::new();
    for ell in 1..=4u32 {
        for k in ell - 1..=n {
            cases.push((k, ell));
        }
    }
    cases
        .par_iter()
        .map(|&(k, ell)| {
            let levels = SetFamily::levels(n, k + 1 - ell..=k).expect("n is within the cap");
            let closed = osh_consecutive_levels(n, k, ell).expect("valid parameters");
            match first_difference(&closed, &osh_via_shift(&levels)) {
                None => Checked::Pass,
                Some(s) => fail(
                    &levels,
                    Some(s),
                    format!("closed form for k={k} ell={ell} disagrees"),
                ),
            }
        })
        .collect()
}

fn sweep_two_level(n: u32, cap: u32) -> Vec<Checked> {
    if n > cap {
        return vec![Checked::Skip];
    }
    let mut params = Vec::new();
    for d in 1..=n {
        for a in 0..=n - d {
            params.push(TwoLevelParams::new(n, a, d).expect("valid parameters"));
        }
    }
    params
        .par_iter()
        .map(|&p| {
            let family = p.family().expect("n is within the cap");
            let closed = TwoLevelClosure::new(p)
                .members()
                .expect("n is within the cap");
            match first_difference(&closed, &osh_via_shift(&family)) {
                None => Checked::Pass,
                Some(s) => fail(
                    &family,
                    Some(s),
                    format!("membership for a={} d={} disagrees with shifting", p.a, p.d),
                ),
            }
        })
        .collect()
}

fn trial_rng(seed: u64, n: u32, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((n as u64) << 40 | trial);
    rng
}

fn resolve(def: &SuiteDef, req: &SuiteRequest) -> CliResult<SuiteParams> {
    let (n_min, n_max) = match (req.n, req.n_min, req.n_max) {
        (Some(n), _, _) => (n, n),
        (None, lo, hi) => (lo.unwrap_or(def.default_n.0), hi.unwrap_or(def.default_n.1)),
    };
    if n_min > n_max {
        return Err(CliError::Usage(format!(
            "empty range: n from {n_min} to {n_max}"
        )));
    }
    if !(0.0..=1.0).contains(&req.density) {
        return Err(CliError::Usage(format!(
            "density {} is outside [0, 1]",
            req.density
        )));
    }
    let max_ground = req.max_ground.unwrap_or(oshlab_core::DEFAULT_MAX_GROUND);
    if let Kind::Family(_) = def.kind {
        if req.exhaustive && n_max > EXHAUSTIVE_FAMILY_LIMIT {
            return Err(CliError::Usage(format!(
                "--exhaustive enumerates all 2^(2^n) families and is limited to n <= {EXHAUSTIVE_FAMILY_LIMIT}"
            )));
        }
        if n_max > max_ground.min(oshlab_core::DEFAULT_MAX_GROUND) {
            return Err(Error::GroundTooLarge {
                n: n_max,
                cap: max_ground,
            }
            .into());
        }
    }
    Ok(SuiteParams {
        n_min,
        n_max,
        trials: req.trials,
        seed: req.seed,
        exhaustive: req.exhaustive,
        density: req.density,
        max_ground,
    })
}

/// Runs a suite. Deterministic for fixed parameters.
pub fn run_suite(name: &str, req: &SuiteRequest) -> CliResult<SuiteReport> {
    let def = find(name)?;
    let params = resolve(def, req)?;
    let start = Instant::now();
    let cap = params.max_ground;
    let results: Vec<Checked> = match def.kind {
        Kind::Family(check) => {
            let mut instances: Vec<(u32, u64)> = Vec::new();
            for n in params.n_min..=params.n_max {
                let count = if params.exhaustive {
                    1u64 << (1u32 << n)
                } else {
                    params.trials
                };
                instances.extend((0..count).map(|i| (n, i)));
            }
            instances
                .par_iter()
                .map(|&(n, i)| {
                    let f = if params.exhaustive {
                        exhaustive_family(n, i)
                    } else {
                        random_family(n, params.density, &mut trial_rng(params.seed, n, i))
                    };
                    check(&f, cap)
                })
                .collect()
        }
        Kind::Sweep(sweep) => (params.n_min..=params.n_max)
            .flat_map(|n| sweep(n, cap))
            .collect(),
    };
    let mut report = SuiteReport {
        suite: def.name.to_string(),
        params,
        passed: 0,
        failed: 0,
        skipped: 0,
        counterexample: None,
        wall_time_secs: 0.0,
    };
    for r in results {
        match r {
            Checked::Pass => report.passed += 1,
            Checked::Skip => report.skipped += 1,
            Checked::Fail(c) => {
                report.failed += 1;
                report.counterexample.get_or_insert(*c);
            }
        }
    }
    report.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// The family on `[n]` whose members are the subsets whose index bit is set in `code`.
pub fn exhaustive_family(n: u32, code: u64) -> SetFamily {
    let members = (0..1u64 << n)
        .filter(|&m| code >> m & 1 == 1)
        .map(ElementSet::from_bits);
    SetFamily::new(n, members).expect("subsets of [n] are valid members")
}

/// Reruns a family suite's check on one family. `Ok(None)` means it passes.
pub fn replay(name: &str, f: &SetFamily, max_ground: u32) -> CliResult<Option<Counterexample>> {
    let def = find(name)?;
    let Kind::Family(check) = def.kind else {
        return Err(CliError::Usage(format!(
            "suite `{name}` sweeps parameters; rerun it with the reported n instead of replaying a family"
        )));
    };
    Ok(match check(f, max_ground) {
        Checked::Fail(c) => Some(*c),
        Checked::Pass => None,
        Checked::Skip => {
            return Err(Error::GroundTooLarge {
                n: f.ground(),
                cap: max_ground,
            }
            .into())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(n: u32, trials: u64, seed: u64) -> SuiteRequest {
        SuiteRequest {
            n: Some(n),
            trials,
            seed,
            density: 0.5,
            ..Default::default()
        }
    }

    #[test]
    fn every_suite_passes_small() {
        for (name, _) in suite_list() {
            let r = run_suite(name, &req(3, 20, 1)).unwrap();
            assert!(r.ok(), "{name}: {:?}", r.counterexample);
            assert!(r.passed > 0, "{name}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("cardinality-law", &req(6, 50, 7)).unwrap();
        let b = run_suite("cardinality-law", &req(6, 50, 7)).unwrap();
        assert_eq!((a.passed, a.failed), (b.passed, b.failed));
        let f1 = random_family(6, 0.5, &mut trial_rng(7, 6, 3));
        let f2 = random_family(6, 0.5, &mut trial_rng(7, 6, 3));
        assert_eq!(f1, f2);
        assert_ne!(f1, random_family(6, 0.5, &mut trial_rng(8, 6, 3)));
    }

    #[test]
    fn exhaustive_covers_all_families() {
        let mut r = req(2, 0, 0);
        r.exhaustive = true;
        let report = run_suite("shift-equals-osh", &r).unwrap();
        assert_eq!(report.passed, 16);
        r.n = Some(5);
        assert!(matches!(
            run_suite("shift-equals-osh", &r),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &req(2, 1, 0)),
            Err(CliError::UnknownSuite(_))
        ));
    }

    #[test]
    fn replay_rejects_sweeps() {
        let f = SetFamily::power_set(2).unwrap();
        assert!(replay("cardinality-law", &f, 24).unwrap().is_none());
        assert!(matches!(
            replay("two-level-closed-form", &f, 24),
            Err(CliError::Usage(_))
        ));
    }
}
