use thiserror::Error;

use crate::storage::{CycleParseError, DbParseError, TableCodecError};

/// A broken precondition of a (commutative monoid, involutive automorphism) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PairViolation {
    #[error("monoid is not commutative")]
    NotCommutative,
    #[error("monoid is not associative")]
    NotAssociative,
    #[error("monoid does not have 0 as two-sided identity")]
    IdentityNotAtZero,
    #[error("alpha has the wrong degree")]
    AlphaDegree,
    #[error("alpha is not an automorphism")]
    NotAnAutomorphism,
    #[error("alpha does not square to the identity")]
    NotAnInvolution,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("table has no identity at index 0")]
    NoIdentityAtZero,
    #[error("invalid twist pair: {0}")]
    InvalidPair(#[from] PairViolation),
    #[error("not an AG-monoid: {0}")]
    NotAgMonoid(&'static str),
    #[error("left identity is not unique or missing (found {0})")]
    LeftIdentity(usize),
    #[error("order {order} outside the supported range {min}..={max}")]
    OrderOutOfRange {
        order: usize,
        min: usize,
        max: usize,
    },
    #[error("permutation {0} is not a member of the group")]
    NotInGroup(String),
    #[error(transparent)]
    TableCodec(#[from] TableCodecError),
    #[error(transparent)]
    Cycle(#[from] CycleParseError),
    #[error(transparent)]
    Db(#[from] DbParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
