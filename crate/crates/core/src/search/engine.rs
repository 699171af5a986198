//! Prefix backtracking over permutations of `1..=n`.
//!
//! The prefix keeps one row of monotone run lengths per position. Appending
//! a value computes its row from the rows `d` steps back; the row is simply
//! overwritten on the next append at that depth, so backtracking costs
//! nothing. Runs only grow as the prefix grows, so a prefix with a run of
//! `k` up or `l` down has no anti-monotone completion and is cut.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{SearchBudget, SearchConfig, SearchError, SearchKind, SearchRecord};
use crate::crucial::is_left_crucial;
use crate::perm::Permutation;

pub(crate) const MAX_N: usize = 63;
const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Stop at the lexicographically first witness.
    Exists,
    /// Visit every leaf.
    Count,
}

/// One search problem. `fixed[i]` pins the value at 0-based position `i`.
#[derive(Clone, Debug)]
pub(crate) struct Query {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub kind: SearchKind,
    pub mode: Mode,
    pub fixed: Vec<Option<u32>>,
}

impl Query {
    pub fn new(k: usize, l: usize, n: usize, kind: SearchKind, mode: Mode) -> Self {
        Query { k, l, n, kind, mode, fixed: vec![None; n] }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n > MAX_N {
            return Err(SearchError::InvalidParameters(format!(
                "n = {} exceeds the search limit of {MAX_N}",
                self.n
            )));
        }
        if self.k < 2 || self.l < 2 {
            return Err(SearchError::InvalidParameters(format!(
                "pattern lengths must be at least 2 (got k = {}, l = {})",
                self.k, self.l
            )));
        }
        if self.kind != SearchKind::Anti && (self.k < 3 || self.l < 3) {
            return Err(SearchError::InvalidParameters(format!(
                "crucial searches need k, l >= 3 (got k = {}, l = {})",
                self.k, self.l
            )));
        }
        if self.fixed.len() != self.n {
            return Err(SearchError::InvalidParameters("fixed-value table has the wrong length".into()));
        }
        let mut seen = 0u64;
        for v in self.fixed.iter().flatten() {
            if *v == 0 || *v as usize > self.n || seen & (1 << v) != 0 {
                return Err(SearchError::InvalidParameters(format!("invalid fixed value {v}")));
            }
            seen |= 1 << v;
        }
        Ok(())
    }

    fn reserved_mask(&self) -> u64 {
        self.fixed.iter().flatten().fold(0, |m, &v| m | 1 << v)
    }
}

/// Shared node accounting and cancellation.
struct Budget {
    nodes: AtomicU64,
    exhausted: AtomicBool,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl Budget {
    fn new(budget: &SearchBudget, start: Instant) -> Self {
        let deadline = if budget.deterministic {
            None
        } else {
            budget.max_time.map(|t| start + t)
        };
        Budget {
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
            max_nodes: budget.max_nodes.unwrap_or(u64::MAX),
            deadline,
        }
    }

    /// Adds `delta` nodes; `false` once the budget is spent.
    fn charge(&self, delta: u64) -> bool {
        let total = self.nodes.fetch_add(delta, Ordering::Relaxed) + delta;
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if total > self.max_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }
}

/// Mutable prefix state.
pub(crate) struct Prefix {
    n: usize,
    k: u8,
    l: u8,
    vals: Vec<u32>,
    used: u64,
    up: Vec<u8>,
    down: Vec<u8>,
}

impl Prefix {
    fn new(n: usize, k: usize, l: usize) -> Self {
        let cap = |x: usize| x.min(u8::MAX as usize) as u8;
        Prefix {
            n,
            k: cap(k),
            l: cap(l),
            vals: Vec::with_capacity(n),
            used: 0,
            up: vec![1; n * n],
            down: vec![1; n * n],
        }
    }

    fn depth(&self) -> usize {
        self.vals.len()
    }

    /// Appends `v` if no forbidden run ends at the new position.
    fn push(&mut self, v: u32) -> bool {
        let i = self.vals.len();
        let n = self.n;
        for d in 1..=i {
            let j = i - d;
            if self.vals[j] < v {
                let run = self.up[j * n + d] + 1;
                if run >= self.k {
                    return false;
                }
                self.up[i * n + d] = run;
                self.down[i * n + d] = 1;
            } else {
                let run = self.down[j * n + d] + 1;
                if run >= self.l {
                    return false;
                }
                self.down[i * n + d] = run;
                self.up[i * n + d] = 1;
            }
        }
        self.vals.push(v);
        self.used |= 1 << v;
        true
    }

    fn pop(&mut self) {
        let v = self.vals.pop().expect("pop on empty prefix");
        self.used &= !(1 << v);
    }

    /// Right-cruciality of the complete permutation from its run rows.
    fn is_crucial(&self) -> bool {
        let n = self.n;
        let (k, l) = (self.k as usize, self.l as usize);
        let mut a_star = u32::MAX;
        let mut b_star = 0u32;
        for diff in 1..=n {
            let end = n - diff;
            if (k - 1) * diff <= n && self.up[end * n + diff] as usize >= k - 1 {
                a_star = a_star.min(self.vals[end]);
            }
            if (l - 1) * diff <= n && self.down[end * n + diff] as usize >= l - 1 {
                b_star = b_star.max(self.vals[end]);
            }
        }
        a_star != u32::MAX && b_star != 0 && a_star <= b_star
    }

    fn to_permutation(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.vals.clone())
    }
}

fn accepts(prefix: &Prefix, query: &Query) -> bool {
    match query.kind {
        SearchKind::Anti => true,
        SearchKind::Crucial => prefix.is_crucial(),
        SearchKind::Bicrucial => {
            prefix.is_crucial() && is_left_crucial(&prefix.to_permutation(), query.k, query.l)
        }
    }
}

/// Per-subtree result.
#[derive(Default)]
struct Partial {
    count: u64,
    witness: Option<Permutation>,
    cancelled: bool,
}

struct Walker<'a> {
    query: &'a Query,
    budget: &'a Budget,
    reserved: u64,
    local_nodes: u64,
    /// Set when a lexicographically earlier subtree already has a witness.
    superseded: &'a dyn Fn() -> bool,
}

impl Walker<'_> {
    fn flush(&mut self) -> bool {
        let ok = self.budget.charge(self.local_nodes);
        self.local_nodes = 0;
        ok
    }

    fn walk(
        &mut self,
        prefix: &mut Prefix,
        leaf: &mut dyn FnMut(&Prefix) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let depth = prefix.depth();
        if depth == prefix.n {
            return leaf(prefix);
        }
        let candidates = match self.query.fixed[depth] {
            Some(v) => (prefix.used & 1 << v == 0).then_some(v..=v),
            None => Some(1..=prefix.n as u32),
        };
        let Some(candidates) = candidates else {
            return ControlFlow::Continue(());
        };
        for v in candidates {
            let taken = prefix.used | if self.query.fixed[depth].is_some() { 0 } else { self.reserved };
            if taken & 1 << v != 0 {
                continue;
            }
            self.local_nodes += 1;
            if self.local_nodes >= FLUSH_EVERY && (!self.flush() || (self.superseded)()) {
                return ControlFlow::Break(());
            }
            if prefix.push(v) {
                let flow = self.walk(prefix, leaf);
                prefix.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn never() -> bool {
    false
}

/// Explores the subtree under `start` (a valid prefix of the query).
fn explore(query: &Query, budget: &Budget, start: &[u32], superseded: &dyn Fn() -> bool) -> Partial {
    let mut prefix = Prefix::new(query.n, query.k, query.l);
    let mut out = Partial::default();
    for &v in start {
        if !prefix.push(v) {
            return out;
        }
    }
    let mut walker = Walker {
        query,
        budget,
        reserved: query.reserved_mask(),
        local_nodes: start.len() as u64,
        superseded,
    };
    let mode = query.mode;
    let flow = walker.walk(&mut prefix, &mut |p: &Prefix| {
        if accepts(p, query) {
            out.count += 1;
            if out.witness.is_none() {
                out.witness = Some(p.to_permutation());
            }
            if mode == Mode::Exists {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    walker.flush();
    let stopped_at_witness = mode == Mode::Exists && out.witness.is_some();
    out.cancelled = flow.is_break() && !stopped_at_witness;
    out
}

/// Valid prefixes of length `depth` in lexicographic order.
fn split_prefixes(query: &Query, depth: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut sub = query.clone();
    sub.mode = Mode::Count;
    let reserved = query.reserved_mask();
    fn rec(query: &Query, reserved: u64, prefix: &mut Prefix, depth: usize, out: &mut Vec<Vec<u32>>) {
        let i = prefix.depth();
        if i == depth {
            out.push(prefix.vals.clone());
            return;
        }
        for v in 1..=query.n as u32 {
            let allowed = match query.fixed[i] {
                Some(f) => f == v && prefix.used & 1 << v == 0,
                None => (prefix.used | reserved) & 1 << v == 0,
            };
            if allowed && prefix.push(v) {
                rec(query, reserved, prefix, depth, out);
                prefix.pop();
            }
        }
    }
    let mut prefix = Prefix::new(query.n, query.k, query.l);
    rec(&sub, reserved, &mut prefix, depth, &mut out);
    out
}

/// Runs a query, splitting the tree over the first two values when more than
/// one thread is requested. Counts merge by addition and witnesses by
/// lexicographic minimum, so results do not depend on the thread count.
pub(crate) fn run(query: &Query, config: &SearchConfig) -> Result<SearchRecord, SearchError> {
    query.validate()?;
    let start = Instant::now();
    let budget = Budget::new(&config.budget, start);

    let split_depth = if config.threads == 1 || query.n < 4 { 0 } else { 2 };
    let subtrees = split_prefixes(query, split_depth);
    // Index of the earliest subtree known to contain a witness.
    let best = AtomicUsize::new(usize::MAX);

    let solve = |(idx, prefix): (usize, &Vec<u32>)| -> Partial {
        if query.mode == Mode::Exists && best.load(Ordering::Relaxed) < idx {
            return Partial { cancelled: true, ..Partial::default() };
        }
        let superseded = || query.mode == Mode::Exists && best.load(Ordering::Relaxed) < idx;
        let part = if query.mode == Mode::Exists {
            explore(query, &budget, prefix, &superseded)
        } else {
            explore(query, &budget, prefix, &never)
        };
        if query.mode == Mode::Exists && part.witness.is_some() {
            best.fetch_min(idx, Ordering::Relaxed);
        }
        part
    };

    let parts: Vec<Partial> = if split_depth == 0 {
        subtrees.iter().enumerate().map(solve).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| SearchError::InvalidParameters(format!("thread pool: {e}")))?;
        pool.install(|| subtrees.par_iter().enumerate().map(solve).collect())
    };

    let nodes = budget.nodes.load(Ordering::Relaxed);
    let elapsed = start.elapsed();
    let first_hit = parts.iter().position(|p| p.witness.is_some());
    // Every subtree before the reported witness (or every subtree, when
    // counting or when nothing was found) must have been fully explored.
    let settled_upto = first_hit.unwrap_or(parts.len());
    let incomplete = parts[..settled_upto].iter().any(|p| p.cancelled)
        || (query.mode == Mode::Count && parts.iter().any(|p| p.cancelled));

    let witness = first_hit.and_then(|i| parts[i].witness.clone());
    let count: u64 = parts.iter().map(|p| p.count).sum();
    let record = SearchRecord {
        k: query.k,
        l: query.l,
        n: query.n,
        kind: query.kind,
        exists: witness.is_some(),
        count: (query.mode == Mode::Count).then_some(count),
        witness,
        elapsed,
        nodes,
    };
    if incomplete {
        return Err(SearchError::BudgetExhausted { partial: Box::new(record) });
    }
    Ok(record)
}

/// Sequential visit of every anti-monotone permutation in lexicographic
/// order. The visitor may stop the walk early.
pub(crate) fn visit_anti_monotone(
    k: usize,
    l: usize,
    n: usize,
    budget: &SearchBudget,
    visitor: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
) -> Result<(u64, u64, Duration), SearchError> {
    let query = Query::new(k, l, n, SearchKind::Anti, Mode::Count);
    query.validate()?;
    let start = Instant::now();
    let shared = Budget::new(budget, start);
    let mut prefix = Prefix::new(n, k, l);
    let mut walker = Walker {
        query: &query,
        budget: &shared,
        reserved: 0,
        local_nodes: 0,
        superseded: &never,
    };
    let mut count = 0u64;
    let _ = walker.walk(&mut prefix, &mut |p: &Prefix| {
        count += 1;
        visitor(&p.vals)
    });
    let exhausted = shared.exhausted.load(Ordering::Relaxed);
    walker.flush();
    let nodes = shared.nodes.load(Ordering::Relaxed);
    if exhausted {
        return Err(SearchError::BudgetExhausted {
            partial: Box::new(SearchRecord {
                k,
                l,
                n,
                kind: SearchKind::Anti,
                exists: count > 0,
                count: Some(count),
                witness: None,
                elapsed: start.elapsed(),
                nodes,
            }),
        });
    }
    Ok((count, nodes, start.elapsed()))
}
