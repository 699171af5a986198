//! The permutation value type and its symmetry operations.
//!
//! Values are 1-based throughout: a permutation of length `n` holds each of
//! `1..=n` exactly once.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::notation::{self, ParseError};

/// A permutation `p_1 p_2 ... p_n` of the values `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    elems: Vec<u32>,
}

impl Permutation {
    /// Validates that `elems` is a bijection on `1..=n`.
    pub fn new(elems: Vec<u32>) -> Result<Self> {
        let n = elems.len();
        let mut seen = vec![false; n + 1];
        for &v in &elems {
            if v == 0 || v as usize > n {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("value {v} out of range"),
                });
            }
            if seen[v as usize] {
                return Err(Error::DuplicateValue { value: v as i64 });
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { elems })
    }

    /// Skips validation; callers guarantee the bijection invariant.
    pub(crate) fn from_vec_unchecked(elems: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(elems.clone()).is_ok(), "{elems:?}");
        Permutation { elems }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            elems: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.elems
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.elems[i - 1]
    }

    /// `r(p)`: the permutation read backwards.
    pub fn reverse(&self) -> Self {
        let mut elems = self.elems.clone();
        elems.reverse();
        Permutation { elems }
    }

    /// `c(p)`: every value `v` replaced by `n + 1 - v`.
    pub fn complement(&self) -> Self {
        let top = self.len() as u32 + 1;
        Permutation {
            elems: self.elems.iter().map(|&v| top - v).collect(),
        }
    }

    pub fn reverse_complement(&self) -> Self {
        let top = self.len() as u32 + 1;
        Permutation {
            elems: self.elems.iter().rev().map(|&v| top - v).collect(),
        }
    }

    /// Appends `x` on the right, bumping every existing value `>= x`.
    pub fn extend_right(&self, x: u32) -> Result<Self> {
        self.check_extension(x)?;
        let mut elems = bumped(&self.elems, x);
        elems.push(x);
        Ok(Permutation { elems })
    }

    /// Prepends `x` on the left, bumping every existing value `>= x`.
    pub fn extend_left(&self, x: u32) -> Result<Self> {
        self.check_extension(x)?;
        let mut elems = Vec::with_capacity(self.len() + 1);
        elems.push(x);
        elems.extend(self.elems.iter().map(|&v| if v >= x { v + 1 } else { v }));
        Ok(Permutation { elems })
    }

    /// All `n + 1` right extensions, ordered by the appended value.
    pub fn extensions_right(&self) -> Vec<Self> {
        (1..=self.len() as u32 + 1)
            .map(|x| self.extend_right(x).expect("x in range"))
            .collect()
    }

    /// All `n + 1` left extensions, ordered by the prepended value.
    pub fn extensions_left(&self) -> Vec<Self> {
        (1..=self.len() as u32 + 1)
            .map(|x| self.extend_left(x).expect("x in range"))
            .collect()
    }

    /// Reduced form of the subsequence at the given 1-based positions.
    pub fn pattern_at(&self, positions: impl IntoIterator<Item = usize>) -> Self {
        let values: Vec<u32> = positions.into_iter().map(|i| self.at(i)).collect();
        reduce_distinct(&values)
    }

    /// Adds `offset` to every value. The result is a sequence, not a
    /// permutation, until it is interleaved with the missing values.
    pub(crate) fn shifted(&self, offset: u32) -> impl Iterator<Item = u32> + '_ {
        self.elems.iter().map(move |&v| v + offset)
    }

    fn check_extension(&self, x: u32) -> Result<()> {
        let max = self.len() as u32 + 1;
        if x == 0 || x > max {
            return Err(Error::ExtensionOutOfRange { x, max });
        }
        Ok(())
    }
}

fn bumped(elems: &[u32], x: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(elems.len() + 1);
    out.extend(elems.iter().map(|&v| if v >= x { v + 1 } else { v }));
    out
}

/// Reduced form of a sequence of distinct integers: the `i`-th smallest
/// entry becomes `i`, so `2754` reduces to `1432`.
pub fn reduce(seq: &[i64]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by_key(|&i| seq[i]);
    for w in order.windows(2) {
        if seq[w[0]] == seq[w[1]] {
            return Err(Error::DuplicateValue { value: seq[w[0]] });
        }
    }
    let mut elems = vec![0u32; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        elems[i] = rank as u32 + 1;
    }
    Ok(Permutation { elems })
}

pub(crate) fn reduce_distinct(values: &[u32]) -> Permutation {
    let wide: Vec<i64> = values.iter().map(|&v| v as i64).collect();
    reduce(&wide).expect("values are distinct")
}

impl Index<usize> for Permutation {
    type Output = u32;

    /// 0-based slice indexing; use [`Permutation::at`] for 1-based access.
    fn index(&self, index: usize) -> &u32 {
        &self.elems[index]
    }
}

impl AsRef<[u32]> for Permutation {
    fn as_ref(&self) -> &[u32] {
        &self.elems
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(elems: Vec<u32>) -> Result<Self> {
        Permutation::new(elems)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.elems
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::format_notation(self))
    }
}

impl FromStr for Permutation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        notation::parse_notation(s)
    }
}
