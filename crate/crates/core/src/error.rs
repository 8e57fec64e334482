use thiserror::Error;

use crate::dyadic::DyadicRational;
use crate::set::ElementSet;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ground size {n} exceeds the cap of {cap}")]
    GroundTooLarge { n: u32, cap: u32 },
    #[error("element {element} is outside [1, {n}]")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("element {element} is outside [1, {n}]")]
    InvalidElement { element: u32, n: u32 },
    #[error("set {0} occurs more than once")]
    DuplicateSet(ElementSet),
    #[error("element {0} occurs more than once in a set")]
    DuplicateElement(u32),
    #[error("the empty set has no block encoding")]
    EmptySet,
    #[error("malformed block encoding: {0}")]
    MalformedEncoding(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("criterion fails: sum = {sum} is not below {ell}")]
    CriterionFails { sum: DyadicRational, ell: u32 },
    #[error("target {target} does not have the required shape: {reason}")]
    ShapeMismatch { target: ElementSet, reason: String },
    #[error("witness family lives on [{n}] but its target ends at {max}")]
    WitnessNotNormalized { n: u32, max: u32 },
    #[error("bound violated: {0}")]
    BoundViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
