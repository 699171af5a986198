//! Explicit constructions. Every public constructor verifies its output
//! before returning it; a failed check is an error, never a silent result.

mod anti;
mod bicrucial;
mod doubling;
mod families;

use std::fmt;
use std::str::FromStr;

pub use anti::{anti_monotone_33, anti_monotone_33_variants, shuffle_down, shuffle_down_odd};
pub use bicrucial::{bicrucial_3l_formula_length, construct_bicrucial_3l, known_bicrucial_3l};
pub use doubling::{double_even, double_odd, extend_bicrucial_odd, make_bicrucial};
pub use families::{
    construct_crucial, construct_crucial_3l, construct_crucial_44, construct_crucial_44_of_length,
    construct_crucial_4l, construct_figure1, figure1_layout, SEARCH_FALLBACK_MAX_N,
};

use crate::crucial::{is_bicrucial, is_crucial};
use crate::error::{Error, Result};
use crate::pattern::is_anti_monotone;
use crate::perm::Permutation;
use crate::search::SearchConfig;

/// `max(k,l) * (min(k,l) - 1)`, the shortest length of a `(k,l)`-crucial
/// permutation.
pub fn minimal_length_formula(k: usize, l: usize) -> Result<usize> {
    if k < 3 || l < 3 {
        return Err(Error::Domain(format!("k and l must be at least 3 (got k = {k}, l = {l})")));
    }
    Ok(k.max(l) * (k.min(l) - 1))
}

pub(crate) fn ensure_crucial(name: &'static str, p: Permutation, k: usize, l: usize) -> Result<Permutation> {
    if is_crucial(&p, k, l) {
        Ok(p)
    } else {
        let reason = if is_anti_monotone(&p, k, l) {
            "some right extension stays anti-monotone"
        } else {
            "not anti-monotone"
        };
        Err(Error::ConstructionInvalid { name, perm: p, reason: format!("{reason} for k = {k}, l = {l}") })
    }
}

pub(crate) fn ensure_bicrucial(name: &'static str, p: Permutation, k: usize, l: usize) -> Result<Permutation> {
    if is_bicrucial(&p, k, l) {
        Ok(p)
    } else {
        let reason = if !is_anti_monotone(&p, k, l) {
            "not anti-monotone"
        } else if !is_crucial(&p, k, l) {
            "some right extension stays anti-monotone"
        } else {
            "some left extension stays anti-monotone"
        };
        Err(Error::ConstructionInvalid { name, perm: p, reason: format!("{reason} for k = {k}, l = {l}") })
    }
}

/// Sequential, node-limited search used by template fallbacks.
pub(crate) fn search_fallback_config() -> SearchConfig {
    let mut config = SearchConfig::sequential().with_max_nodes(200_000_000);
    config.budget.deterministic = true;
    config
}

/// Named construction families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Figure1,
    Crucial,
    Crucial44,
    Crucial4l,
    Crucial3l,
    DoubleOdd,
    DoubleEven,
    MakeBicrucial,
    ExtendBicrucialOdd,
    Bicrucial3l,
    AntiMonotone33,
    ShuffleDown,
    ShuffleDownOdd,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::Figure1,
        Family::Crucial,
        Family::Crucial44,
        Family::Crucial4l,
        Family::Crucial3l,
        Family::DoubleOdd,
        Family::DoubleEven,
        Family::MakeBicrucial,
        Family::ExtendBicrucialOdd,
        Family::Bicrucial3l,
        Family::AntiMonotone33,
        Family::ShuffleDown,
        Family::ShuffleDownOdd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Figure1 => "figure1",
            Family::Crucial => "crucial",
            Family::Crucial44 => "crucial-44",
            Family::Crucial4l => "crucial-4l",
            Family::Crucial3l => "crucial-3l",
            Family::DoubleOdd => "double-odd",
            Family::DoubleEven => "double-even",
            Family::MakeBicrucial => "make-bicrucial",
            Family::ExtendBicrucialOdd => "extend-bicrucial-odd",
            Family::Bicrucial3l => "bicrucial-3l",
            Family::AntiMonotone33 => "anti-monotone-33",
            Family::ShuffleDown => "shuffle-down",
            Family::ShuffleDownOdd => "shuffle-down-odd",
        }
    }

    /// What the output is checked against, if anything beyond anti-monotonicity.
    pub fn target(self) -> Target {
        match self {
            Family::MakeBicrucial | Family::ExtendBicrucialOdd | Family::Bicrucial3l => Target::Bicrucial,
            Family::AntiMonotone33 | Family::ShuffleDown | Family::ShuffleDownOdd => Target::AntiMonotone,
            _ => Target::Crucial,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Family::ALL.iter().map(|f| f.as_str()).collect();
            Error::Domain(format!("unknown construction {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    AntiMonotone,
    Crucial,
    Bicrucial,
}

/// A construction request. Which fields are required depends on the family;
/// missing ones are reported as [`Error::Precondition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub family: Family,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub n: Option<usize>,
    /// Input permutations: the base for `figure1`, the crucial or bicrucial
    /// input for doubling, both halves for the shuffles.
    pub seeds: Vec<Permutation>,
}

impl ConstructionSpec {
    pub fn new(family: Family) -> Self {
        ConstructionSpec { family, k: None, l: None, n: None, seeds: Vec::new() }
    }

    fn need(&self, v: Option<usize>, flag: &str) -> Result<usize> {
        v.ok_or_else(|| Error::Precondition(format!("{} needs {flag}", self.family)))
    }

    fn seed(&self, i: usize, what: &str) -> Result<&Permutation> {
        self.seeds
            .get(i)
            .ok_or_else(|| Error::Precondition(format!("{} needs {what}", self.family)))
    }

    /// Filler for the doubling constructions: the second seed if given,
    /// otherwise `anti_monotone_33(len)`.
    fn filler(&self, len: usize) -> Permutation {
        self.seeds.get(1).cloned().unwrap_or_else(|| anti_monotone_33(len))
    }

    pub fn build(&self) -> Result<Permutation> {
        let (k, l, n) = (|| self.need(self.k, "k"), || self.need(self.l, "l"), || self.need(self.n, "n"));
        match self.family {
            Family::Figure1 => construct_figure1(k()?, l()?, n()?, self.seeds.first()),
            Family::Crucial => construct_crucial(k()?, l()?, n()?),
            Family::Crucial44 => construct_crucial_44(),
            Family::Crucial4l => construct_crucial_4l(l()?),
            Family::Crucial3l => construct_crucial_3l(l()?),
            Family::DoubleOdd => {
                let c = self.seed(0, "a crucial input")?;
                double_odd(c, &self.filler(c.len() + 1), k()?, l()?)
            }
            Family::DoubleEven => {
                let c = self.seed(0, "a crucial input")?;
                double_even(c, &self.filler(c.len()), k()?, l()?)
            }
            Family::MakeBicrucial => make_bicrucial(self.seed(0, "a crucial input")?, k()?, l()?),
            Family::ExtendBicrucialOdd => {
                let b = self.seed(0, "a bicrucial input")?;
                extend_bicrucial_odd(b, &self.filler(b.len() + 1), k()?, l()?)
            }
            Family::Bicrucial3l => construct_bicrucial_3l(l()?),
            Family::AntiMonotone33 => Ok(anti_monotone_33(n()?)),
            Family::ShuffleDown => shuffle_down(self.seed(0, "two inputs")?, self.seed(1, "two inputs")?),
            Family::ShuffleDownOdd => {
                shuffle_down_odd(self.seed(0, "two inputs")?, self.seed(1, "two inputs")?)
            }
        }
    }
}
