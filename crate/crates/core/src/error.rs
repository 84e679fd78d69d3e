use thiserror::Error;

/// Errors raised by the set-family data model, the constructions and the search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty family")]
    EmptyFamily,
    #[error("family not intersecting")]
    NotIntersecting,
    #[error("element {element} outside the ground set [1, {n}]")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("duplicate element {0}")]
    DuplicateElement(u32),
    #[error("ground set mismatch: expected n={expected}, found n={found}")]
    GroundMismatch { expected: u32, found: u32 },
    #[error("rank mismatch: expected sets of size {expected}, found size {found}")]
    RankMismatch { expected: u32, found: u32 },
    #[error("invalid parameter {name}={value}: {reason}")]
    Parameter {
        name: &'static str,
        value: u64,
        reason: &'static str,
    },
    #[error("merge target not fresh: label {0} already occurs in the family")]
    MergeTargetNotFresh(u32),
    #[error("canonicalization limit: n={n} exceeds {limit}")]
    CanonicalizationLimit { n: u32, limit: u32 },
    #[error("search limit: {reason}")]
    SearchLimit { reason: &'static str },
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("search witness failed verification: {0}")]
    WitnessRejected(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn param(name: &'static str, value: impl Into<u64>, reason: &'static str) -> Error {
    Error::Parameter {
        name,
        value: value.into(),
        reason,
    }
}
