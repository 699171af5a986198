use thiserror::Error;

use crate::perm::Permutation;

/// Errors produced by the permutation library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate value {value} in input sequence")]
    DuplicateValue { value: i64 },
    #[error("sequence is not a permutation of 1..{n}: {reason}")]
    NotAPermutation { n: usize, reason: String },
    #[error("extension value {x} outside 1..={max}")]
    ExtensionOutOfRange { x: u32, max: u32 },
    #[error("length mismatch: {what} (expected {expected}, got {actual})")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("{perm} is not ({k},{l})-anti-monotone")]
    NotAntiMonotone { perm: Permutation, k: usize, l: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction {name} produced an invalid permutation {perm}: {reason}")]
    ConstructionInvalid {
        name: &'static str,
        perm: Permutation,
        reason: String,
    },
    #[error("unsupported parameters {params}: {hint}")]
    Unsupported { params: String, hint: String },
    #[error("no permutation found for {what} within the search budget")]
    NotFound { what: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
