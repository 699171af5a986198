//! Exhaustive search for anti-monotone, crucial and bicrucial permutations.

mod cache;
mod engine;
mod facts;

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cache::{ResultsCache, CacheError, CACHE_ENV, ENGINE_VERSION};
pub use facts::{
    verify_paper_facts, Fact, FactSource, PINNED_ANTI_33_AT_12, PINNED_CRUCIAL_33_AT_7, PINNED_MINIMAL_BICRUCIAL_34,
};

use crate::constructions::minimal_length_formula;
use crate::perm::Permutation;
use engine::{Mode, Query};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    Anti,
    Crucial,
    Bicrucial,
}

impl SearchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchKind::Anti => "anti",
            SearchKind::Crucial => "crucial",
            SearchKind::Bicrucial => "bicrucial",
        }
    }
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "anti" | "anti-monotone" => Ok(SearchKind::Anti),
            "crucial" => Ok(SearchKind::Crucial),
            "bicrucial" => Ok(SearchKind::Bicrucial),
            other => Err(format!("unknown kind {other:?} (expected anti, crucial or bicrucial)")),
        }
    }
}

/// Limits on a search. Running out is an error carrying the partial result,
/// never a negative answer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Ignore `max_time`, so that the outcome depends only on the inputs.
    pub deterministic: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: SearchBudget,
    /// Worker threads; 1 runs on the calling thread, 0 uses all cores.
    pub threads: usize,
}

impl SearchConfig {
    pub fn sequential() -> Self {
        SearchConfig { threads: 1, ..Self::default() }
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.budget.max_nodes = Some(max_nodes);
        self
    }
}

/// Result of one exhaustive search at a fixed length.
///
/// `count` is `None` for existence queries that stopped at the first
/// witness. The witness is always the lexicographically smallest one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub kind: SearchKind,
    pub exists: bool,
    pub count: Option<u64>,
    pub witness: Option<Permutation>,
    #[serde(with = "duration_secs")]
    pub elapsed: Duration,
    pub nodes: u64,
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budget exhausted at n = {}: {} nodes visited, results incomplete", partial.n, partial.nodes)]
    BudgetExhausted { partial: Box<SearchRecord> },
    #[error("invalid search parameters: {0}")]
    InvalidParameters(String),
}

fn single(k: usize, l: usize, n: usize, kind: SearchKind, mode: Mode, config: &SearchConfig) -> Result<SearchRecord, SearchError> {
    engine::run(&Query::new(k, l, n, kind, mode), config)
}

/// Visits every `(k,l)`-anti-monotone permutation of length `n` once, in
/// lexicographic order. Returns the number visited.
pub fn enumerate_anti_monotone(
    k: usize,
    l: usize,
    n: usize,
    budget: &SearchBudget,
    mut visitor: impl FnMut(&[u32]) -> ControlFlow<()>,
) -> Result<u64, SearchError> {
    engine::visit_anti_monotone(k, l, n, budget, &mut visitor).map(|(count, _, _)| count)
}

pub fn count_anti_monotone(k: usize, l: usize, n: usize, config: &SearchConfig) -> Result<SearchRecord, SearchError> {
    single(k, l, n, SearchKind::Anti, Mode::Count, config)
}

pub fn exists_crucial(k: usize, l: usize, n: usize, config: &SearchConfig) -> Result<SearchRecord, SearchError> {
    single(k, l, n, SearchKind::Crucial, Mode::Exists, config)
}

pub fn count_crucial(k: usize, l: usize, n: usize, config: &SearchConfig) -> Result<SearchRecord, SearchError> {
    single(k, l, n, SearchKind::Crucial, Mode::Count, config)
}

pub fn exists_bicrucial(k: usize, l: usize, n: usize, config: &SearchConfig) -> Result<SearchRecord, SearchError> {
    single(k, l, n, SearchKind::Bicrucial, Mode::Exists, config)
}

pub fn count_bicrucial(k: usize, l: usize, n: usize, config: &SearchConfig) -> Result<SearchRecord, SearchError> {
    single(k, l, n, SearchKind::Bicrucial, Mode::Count, config)
}

/// Existence or count query for any kind.
pub fn search(k: usize, l: usize, n: usize, kind: SearchKind, count: bool, config: &SearchConfig) -> Result<SearchRecord, SearchError> {
    let mode = if count { Mode::Count } else { Mode::Exists };
    single(k, l, n, kind, mode, config)
}

/// Lexicographically smallest permutation of length `n` of the given kind
/// whose 1-based positions carry the pinned values.
pub fn find_first_with_fixed(
    k: usize,
    l: usize,
    n: usize,
    kind: SearchKind,
    fixed: &[(usize, u32)],
    config: &SearchConfig,
) -> Result<SearchRecord, SearchError> {
    let mut query = Query::new(k, l, n, kind, Mode::Exists);
    for &(pos, v) in fixed {
        if pos == 0 || pos > n {
            return Err(SearchError::InvalidParameters(format!("fixed position {pos} outside 1..={n}")));
        }
        query.fixed[pos - 1] = Some(v);
    }
    engine::run(&query, config)
}

/// Ascending length scan. `minimal` is the first length with a witness;
/// `records` holds every length examined, negatives included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalSearch {
    pub k: usize,
    pub l: usize,
    pub kind: SearchKind,
    pub minimal: Option<usize>,
    pub records: Vec<SearchRecord>,
}

impl MinimalSearch {
    pub fn witness(&self) -> Option<&Permutation> {
        self.records.last().and_then(|r| r.witness.as_ref())
    }
}

/// Error from an ascending scan: the budget ran out after the lengths in
/// `settled` were fully decided.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[error("budget exhausted at n = {}; lengths up to {} settled", partial.n, settled.last().map_or(0, |r| r.n))]
pub struct ScanExhausted {
    pub settled: Vec<SearchRecord>,
    pub partial: Box<SearchRecord>,
}

/// Existence scan over `from..=to`, stopping at the first length with a
/// witness.
pub fn find_minimal(
    k: usize,
    l: usize,
    kind: SearchKind,
    from: usize,
    to: usize,
    config: &SearchConfig,
    mut cache: Option<&mut CacheUse<'_>>,
) -> Result<MinimalSearch, ScanError> {
    let mut records = Vec::new();
    for n in from..=to {
        match cached_search(k, l, n, kind, false, config, cache.as_deref_mut()) {
            Ok(rec) => {
                let found = rec.exists;
                records.push(rec);
                if found {
                    return Ok(MinimalSearch { k, l, kind, minimal: Some(n), records });
                }
            }
            Err(SearchError::BudgetExhausted { partial }) => {
                return Err(ScanError::Exhausted(ScanExhausted {
                    settled: records,
                    partial,
                }))
            }
            Err(SearchError::InvalidParameters(msg)) => return Err(ScanError::Invalid(msg)),
        }
    }
    Ok(MinimalSearch { k, l, kind, minimal: None, records })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error(transparent)]
    Exhausted(ScanExhausted),
    #[error("invalid search parameters: {0}")]
    Invalid(String),
}

/// Smallest `n` with a `(k,l)`-crucial permutation, scanning upward from
/// `max(k,l) * (min(k,l) - 1)`.
pub fn find_minimal_crucial(k: usize, l: usize, config: &SearchConfig) -> Result<MinimalSearch, ScanError> {
    let lower = minimal_length_formula(k, l).map_err(|e| ScanError::Invalid(e.to_string()))?;
    find_minimal_crucial_from(k, l, lower, config)
}

/// Same scan starting from an arbitrary length, for checking the lower
/// bound itself.
pub fn find_minimal_crucial_from(k: usize, l: usize, from: usize, config: &SearchConfig) -> Result<MinimalSearch, ScanError> {
    let lower = minimal_length_formula(k, l).map_err(|e| ScanError::Invalid(e.to_string()))?;
    // Crucial permutations exist at the formula length, so the scan always ends there.
    find_minimal(k, l, SearchKind::Crucial, from, lower.max(from), config, None)
}

/// Smallest `n` with a `(k,l)`-bicrucial permutation. Every bicrucial
/// permutation is crucial, so the scan starts at the crucial minimum; the
/// doubling construction bounds it by twice that.
pub fn find_minimal_bicrucial(k: usize, l: usize, config: &SearchConfig) -> Result<MinimalSearch, ScanError> {
    let lower = minimal_length_formula(k, l).map_err(|e| ScanError::Invalid(e.to_string()))?;
    find_minimal(k, l, SearchKind::Bicrucial, lower, 2 * lower, config, None)
}

/// A results cache plus whether to bypass its lookups.
pub struct CacheUse<'a> {
    pub cache: &'a mut ResultsCache,
    pub force: bool,
}

/// [`search`] through an optional cache: hits are served unless forced,
/// fresh complete results are appended.
pub fn cached_search(
    k: usize,
    l: usize,
    n: usize,
    kind: SearchKind,
    count: bool,
    config: &SearchConfig,
    cache: Option<&mut CacheUse<'_>>,
) -> Result<SearchRecord, SearchError> {
    let Some(cu) = cache else {
        return search(k, l, n, kind, count, config);
    };
    if !cu.force {
        if let Some(hit) = cu.cache.lookup(k, l, n, kind, count) {
            return Ok(hit);
        }
    }
    let rec = search(k, l, n, kind, count, config)?;
    // A failed cache write loses a memo entry, not a result.
    let _ = cu.cache.append(&rec);
    Ok(rec)
}

/// One record per length `1..=n_max`. A length whose search ran out of
/// budget is reported as an error entry and not cached.
pub fn classify_lengths(
    k: usize,
    l: usize,
    n_max: usize,
    kind: SearchKind,
    count: bool,
    config: &SearchConfig,
    mut cache: Option<&mut CacheUse<'_>>,
) -> Vec<Result<SearchRecord, SearchError>> {
    (1..=n_max)
        .map(|n| cached_search(k, l, n, kind, count, config, cache.as_deref_mut()))
        .collect()
}
