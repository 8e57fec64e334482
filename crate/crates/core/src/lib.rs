//! Shattering, strong tracing and order shattering of set families over `[n]`.
//!
//! The crate computes the three closures directly, computes order shattering a
//! second way through down-shifts, builds l-Sperner families that order
//! shatter a given target, and evaluates closed forms for unions of complete
//! levels.

pub mod blocks;
pub mod combin;
pub mod dyadic;
pub mod error;
pub mod family;
pub mod sample;
pub mod set;
pub mod shatter;
pub mod shift;
pub mod sperner;
pub mod twolevel;

pub use blocks::{decode_blocks, encode_blocks, Block, BlockEncoding};
pub use dyadic::DyadicRational;
pub use error::{Error, Result};
pub use family::{
    complement_family, is_downset, is_l_sperner, longest_chain, SetFamily, DEFAULT_MAX_GROUND,
};
pub use set::{prec_leq, subset_of, ElementSet, MAX_ELEMENT};
pub use shatter::{
    extract_witness, order_shatters, osh_direct, osh_direct_with, sh_all, shatters, st_all,
    strongly_traces, verify_standard_order, OrderShatterIndex, OshOptions, ShatterWitness,
};
pub use shift::{check_stage_invariant, osh_via_shift, shift_element, shift_full, ShiftTrace};
pub use sperner::{
    construct_single_block, construct_sperner_witness, construct_sperner_witness_with,
    criterion_holds, criterion_sum, exhaustive_nonexistence, extend_consecutive, extend_with_gap,
    shift_and_extend, shift_back, shift_back_by_gap, SpernerWitness,
};
pub use twolevel::{
    construct_b_mj, construct_claim_even, construct_s_mj, construct_sprime_mr, equal_prefix_check,
    is_t_ballot, is_t_ballot_by_prefix, membership, minimal_sets, osh_consecutive_levels, t_min,
    tmin_bound, MinimalSet, MinimalSetKind, TwoLevelClosure, TwoLevelParams,
};
