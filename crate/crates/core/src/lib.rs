//! Crucial and bicrucial permutations with respect to arithmetic occurrences
//! of the monotone patterns `12...k` and `l...21`.
//!
//! A permutation is `(k,l)`-anti-monotone when no arithmetic subsequence
//! (positions in arithmetic progression) is increasing of length `k` or
//! decreasing of length `l`. It is crucial when it is anti-monotone but no
//! extension to the right is, and bicrucial when the same holds on the left.

pub mod constructions;
pub mod crucial;
pub mod error;
pub mod notation;
pub mod pattern;
pub mod perm;
pub mod search;

pub use crucial::{
    classify, is_bicrucial, is_crucial, is_crucial_fast, is_crucial_naive, is_left_crucial,
    witness_sets, Kind, Verdict, WitnessSets,
};
pub use error::{Error, Result};
pub use notation::{format_notation, parse_notation, ParseError};
pub use pattern::{arithmetic_occurrences, is_anti_monotone, Direction, Occurrence, RunTable};
pub use perm::{reduce, Permutation};
