//! Text and JSON shapes for command output.

use std::fmt::Write;

use apcrucial::constructions::Family;
use apcrucial::search::{Fact, FactSource, MinimalSearch, SearchError, SearchRecord};
use apcrucial::{Direction, Permutation, Verdict};
use serde::Serialize;

fn list(xs: &[u32]) -> String {
    if xs.is_empty() {
        "none".to_string()
    } else {
        xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    }
}

fn positions(ps: impl IntoIterator<Item = usize>) -> String {
    ps.into_iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

pub fn verdict(v: &Verdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  k={} l={}  {}", v.perm, v.k, v.l, v.kind.as_str());
    if let Some(o) = &v.violation {
        let pattern = match o.direction {
            Direction::Up => format!("12...{}", o.len),
            Direction::Down => format!("{}...21", o.len),
        };
        let _ = writeln!(s, "  violation: {pattern} at positions {} (d={})", positions(o.positions()), o.diff);
        return s;
    }
    let _ = writeln!(s, "  surviving right extensions: {}", list(&v.right_survivors));
    let _ = writeln!(s, "  surviving left extensions: {}", list(&v.left_survivors));
    if let Some(w) = &v.right_witnesses {
        for (name, chains) in [("up", &w.up_chains), ("down", &w.down_chains)] {
            for c in chains {
                let _ = writeln!(s, "  {name} chain d={}: positions {} ending in {}", c.diff, positions(c.positions.iter().copied()), c.last);
            }
        }
        let show = |x: Option<u32>| x.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(s, "  a*={} b*={}", show(w.a_star), show(w.b_star));
    }
    s
}

#[derive(Serialize)]
pub struct Constructed<'a> {
    family: &'static str,
    verified: bool,
    perm: String,
    elems: &'a [u32],
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl<'a> Constructed<'a> {
    pub fn new(family: Family, p: &'a Permutation, verdict: Option<Verdict>) -> Self {
        Constructed { family: family.as_str(), verified: true, perm: p.to_string(), elems: p.as_slice(), verdict, error: None }
    }

    pub fn failed(family: Family, p: &'a Permutation, reason: &str) -> Self {
        Constructed {
            family: family.as_str(),
            verified: false,
            perm: p.to_string(),
            elems: p.as_slice(),
            verdict: None,
            error: Some(reason.to_string()),
        }
    }
}

#[derive(Serialize)]
pub struct Partial<'a> {
    pub exhausted: bool,
    pub partial: &'a SearchRecord,
}

#[derive(Serialize)]
pub struct Row<'a> {
    pub exhausted: bool,
    #[serde(flatten)]
    pub record: &'a SearchRecord,
}

pub fn record(r: &SearchRecord) -> String {
    let mut s = format!("k={} l={} n={} {}: ", r.k, r.l, r.n, r.kind);
    s.push_str(if r.exists { "exists" } else { "none" });
    if let Some(c) = r.count {
        let _ = write!(s, ", count {c}");
    }
    if let Some(w) = &r.witness {
        let _ = write!(s, ", first {w}");
    }
    let _ = write!(s, " [{} nodes, {:.3}s]", r.nodes, r.elapsed.as_secs_f64());
    s
}

pub fn scan(m: &MinimalSearch) -> String {
    let mut s = String::new();
    for r in &m.records {
        let _ = writeln!(s, "{}", record(r));
    }
    match (m.minimal, m.witness()) {
        (Some(n), Some(w)) => {
            let _ = writeln!(s, "minimal {} length for k={} l={}: n = {n}, witness {w}", m.kind, m.k, m.l);
        }
        _ => {
            let _ = writeln!(s, "no {} permutation found in the scanned range", m.kind);
        }
    }
    s
}

pub fn table(rows: &[Result<SearchRecord, SearchError>]) -> String {
    let mut s = format!("{:>4}  {:<7}  {:>10}  witness\n", "n", "exists", "count");
    for row in rows {
        let (r, mark) = match row {
            Ok(r) => (r, ""),
            Err(SearchError::BudgetExhausted { partial }) => (partial.as_ref(), "?"),
            Err(SearchError::InvalidParameters(_)) => continue,
        };
        let exists = if mark.is_empty() { r.exists.to_string() } else if r.exists { "true".into() } else { "?".into() };
        let count = r.count.map_or("-".to_string(), |c| format!("{c}{mark}"));
        let witness = r.witness.as_ref().map_or("-".to_string(), |w| w.to_string());
        let _ = writeln!(s, "{:>4}  {:<7}  {:>10}  {witness}", r.n, exists, count);
    }
    s
}

pub fn fact(f: &Fact) -> String {
    let status = if f.passed { "PASS" } else { "FAIL" };
    let source = match f.source {
        FactSource::Paper => "published",
        FactSource::Computed => "computed",
    };
    if f.detail.is_empty() {
        format!("{status} [{source}] {}", f.name)
    } else {
        format!("{status} [{source}] {}: {}", f.name, f.detail)
    }
}
