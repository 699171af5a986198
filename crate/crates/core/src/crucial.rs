//! Crucial and bicrucial permutations.
//!
//! A `(k,l)`-anti-monotone permutation is crucial when every right
//! extension creates an arithmetic `12...k` or `l...21`. Only runs ending at
//! the new position can change, so an extension by `x` fails exactly when
//! some suffix-anchored up chain of length `k - 1` ends in a value `< x`, or
//! some suffix-anchored down chain of length `l - 1` ends in a value `>= x`.
//! The surviving extension values therefore form the interval
//! `b* + 1 ..= a*` (see [`WitnessSets`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{first_violation, is_anti_monotone, Occurrence, RunTable};
use crate::perm::Permutation;

/// A monotone arithmetic chain anchored one step before the end: positions
/// `n + 1 - (len) * diff, ..., n + 1 - diff`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub diff: usize,
    pub positions: Vec<usize>,
    pub last: u32,
}

/// Suffix-anchored chains of a `(k,l)`-anti-monotone permutation.
///
/// `up_chains` holds the increasing chains of length `k - 1` and
/// `down_chains` the decreasing chains of length `l - 1`; `a_star` is the
/// smallest last value of an up chain and `b_star` the largest last value of
/// a down chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSets {
    pub up_chains: Vec<Chain>,
    pub down_chains: Vec<Chain>,
    pub a_star: Option<u32>,
    pub b_star: Option<u32>,
}

impl WitnessSets {
    fn from_table(p: &Permutation, table: &RunTable, k: usize, l: usize) -> Self {
        let n = p.len();
        let chains = |len: usize, up: bool| -> Vec<Chain> {
            let len = len.max(1);
            (1..=n)
                .take_while(|&diff| len * diff <= n)
                .filter_map(|diff| {
                    let end = n + 1 - diff;
                    let run = if up { table.up(end, diff) } else { table.down(end, diff) };
                    (run as usize >= len).then(|| Chain {
                        diff,
                        positions: (1..=len).rev().map(|j| n + 1 - j * diff).collect(),
                        last: p.at(end),
                    })
                })
                .collect()
        };
        let up_chains = chains(k - 1, true);
        let down_chains = chains(l - 1, false);
        let a_star = up_chains.iter().map(|c| c.last).min();
        let b_star = down_chains.iter().map(|c| c.last).max();
        WitnessSets { up_chains, down_chains, a_star, b_star }
    }

    /// Values `x` whose right extension stays anti-monotone.
    pub fn surviving_extensions(&self, n: usize) -> std::ops::RangeInclusive<u32> {
        let lo = self.b_star.map_or(1, |b| b + 1);
        let hi = self.a_star.unwrap_or(n as u32 + 1);
        lo..=hi
    }

    pub fn blocks_all_extensions(&self) -> bool {
        match (self.a_star, self.b_star) {
            (Some(a), Some(b)) => a <= b,
            _ => false,
        }
    }
}

/// The suffix-anchored chain sets of an anti-monotone permutation.
pub fn witness_sets(p: &Permutation, k: usize, l: usize) -> Result<WitnessSets> {
    let table = RunTable::build(p);
    if table.max_up() as usize >= k || table.max_down() as usize >= l {
        return Err(Error::NotAntiMonotone { perm: p.clone(), k, l });
    }
    Ok(WitnessSets::from_table(p, &table, k, l))
}

/// Tries every right extension, reusing the parent's run table.
pub fn is_crucial_naive(p: &Permutation, k: usize, l: usize) -> bool {
    right_survivors_naive(p, k, l).is_some_and(|s| s.is_empty())
}

/// Right extension values that keep `p` anti-monotone, or `None` when `p`
/// itself is not anti-monotone.
pub fn right_survivors_naive(p: &Permutation, k: usize, l: usize) -> Option<Vec<u32>> {
    let table = RunTable::build(p);
    if table.max_up() as usize >= k || table.max_down() as usize >= l {
        return None;
    }
    Some(
        (1..=p.len() as u32 + 1)
            .filter(|&x| table.right_extension_is_anti_monotone(p, x, k, l))
            .collect(),
    )
}

/// Crucial iff anti-monotone with both chain sets non-empty and
/// `a* <= b*`. The two thresholds are always distinct values, so the test
/// never hinges on equality.
pub fn is_crucial_fast(p: &Permutation, k: usize, l: usize) -> bool {
    witness_sets(p, k, l).is_ok_and(|w| w.blocks_all_extensions())
}

pub fn is_crucial(p: &Permutation, k: usize, l: usize) -> bool {
    is_crucial_fast(p, k, l)
}

/// No left extension is anti-monotone. Reversal turns left extensions into
/// right ones and swaps the roles of the two patterns.
pub fn is_left_crucial(p: &Permutation, k: usize, l: usize) -> bool {
    is_crucial(&p.reverse(), l, k)
}

pub fn is_bicrucial(p: &Permutation, k: usize, l: usize) -> bool {
    is_crucial(p, k, l) && is_left_crucial(p, k, l)
}

fn survivors(p: &Permutation, k: usize, l: usize) -> Option<(WitnessSets, Vec<u32>)> {
    let w = witness_sets(p, k, l).ok()?;
    let s = w.surviving_extensions(p.len()).collect();
    Some((w, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Contains a forbidden arithmetic occurrence.
    None,
    AntiMonotone,
    Crucial,
    Bicrucial,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::None => "none",
            Kind::AntiMonotone => "anti-monotone",
            Kind::Crucial => "crucial",
            Kind::Bicrucial => "bicrucial",
        }
    }
}

/// Classification of a permutation with the evidence behind it.
///
/// `violation` is set for [`Kind::None`]. The survivor lists hold extension
/// values that keep anti-monotonicity; `right_witnesses` holds the chain sets
/// whenever the permutation is anti-monotone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub perm: Permutation,
    pub k: usize,
    pub l: usize,
    pub kind: Kind,
    pub violation: Option<Occurrence>,
    pub right_survivors: Vec<u32>,
    pub left_survivors: Vec<u32>,
    pub right_witnesses: Option<WitnessSets>,
}

impl Verdict {
    pub fn is_anti_monotone(&self) -> bool {
        self.kind != Kind::None
    }

    pub fn is_crucial(&self) -> bool {
        matches!(self.kind, Kind::Crucial | Kind::Bicrucial)
    }

    pub fn is_left_crucial(&self) -> bool {
        self.is_anti_monotone() && self.left_survivors.is_empty()
    }

    pub fn is_bicrucial(&self) -> bool {
        self.kind == Kind::Bicrucial
    }
}

pub fn classify(p: &Permutation, k: usize, l: usize) -> Verdict {
    let mut verdict = Verdict {
        perm: p.clone(),
        k,
        l,
        kind: Kind::None,
        violation: None,
        right_survivors: Vec::new(),
        left_survivors: Vec::new(),
        right_witnesses: None,
    };
    let Some((witnesses, right)) = survivors(p, k, l) else {
        verdict.violation = first_violation(p, k, l);
        return verdict;
    };
    let (_, left) = survivors(&p.reverse(), l, k).expect("reverse of anti-monotone is anti-monotone");
    verdict.kind = match (right.is_empty(), left.is_empty()) {
        (true, true) => Kind::Bicrucial,
        (true, false) => Kind::Crucial,
        _ => Kind::AntiMonotone,
    };
    verdict.right_survivors = right;
    verdict.left_survivors = left;
    verdict.right_witnesses = Some(witnesses);
    verdict
}

/// `true` when `p` satisfies the anti-monotone precondition, else a
/// contract error naming the parameters.
pub(crate) fn require_anti_monotone(p: &Permutation, k: usize, l: usize) -> Result<()> {
    if is_anti_monotone(p, k, l) {
        Ok(())
    } else {
        Err(Error::NotAntiMonotone { perm: p.clone(), k, l })
    }
}
