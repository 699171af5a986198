//! `apcrucial` command-line tool.
//!
//! Exit codes: 0 the queried property holds or the command succeeded,
//! 1 it does not hold (or a construction failed), 2 usage, parse or cache
//! errors, 3 a search budget ran out.

mod args;
mod render;

use std::process::ExitCode;

use apcrucial::constructions::{figure1_layout, ConstructionSpec, Family, Target};
use apcrucial::search::{
    cached_search, classify_lengths, find_minimal, verify_paper_facts, CacheUse, FactSource, ResultsCache,
    ScanError, SearchError, SearchKind,
};
use apcrucial::{classify, Error, Permutation};
use clap::Parser;
use serde::Serialize;

use args::{CheckArgs, ClassifyArgs, Cli, Command, ConstructArgs, PermInput, Property, Query, RunOptions, SearchArgs, VerifyArgs};

const HOLDS: u8 = 0;
const FAILS: u8 = 1;
const USAGE: u8 = 2;
const EXHAUSTED: u8 = 3;

/// Error already reported to the user, carrying the exit code.
struct Exit(u8);

fn usage(msg: impl std::fmt::Display) -> Exit {
    eprintln!("error: {msg}");
    Exit(USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check(a) => check(a),
        Command::Construct(a) => construct(a),
        Command::Search(a) => search(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Verify(a) => verify(a),
    };
    ExitCode::from(code.unwrap_or_else(|Exit(c)| c))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

fn read_perm(text: &str, flag: &str, input: &PermInput) -> Result<Permutation, Exit> {
    if input.json_in {
        let elems: Vec<u32> =
            serde_json::from_str(text).map_err(|e| usage(format!("--{flag}: expected a JSON array: {e}")))?;
        Permutation::new(elems).map_err(|e| usage(format!("--{flag}: {e}")))
    } else {
        text.parse().map_err(|e| usage(format!("--{flag} {text:?}: {e}")))
    }
}

fn check(a: CheckArgs) -> Result<u8, Exit> {
    if a.k < 2 || a.l < 2 {
        return Err(usage("--k and --l must be at least 2"));
    }
    if a.property != Property::Anti && (a.k < 3 || a.l < 3) {
        return Err(usage("--k and --l must be at least 3 for cruciality"));
    }
    let p = read_perm(&a.perm, "perm", &a.input)?;
    let verdict = classify(&p, a.k, a.l);
    let holds = match a.property {
        Property::Anti => verdict.is_anti_monotone(),
        Property::Crucial => verdict.is_crucial(),
        Property::LeftCrucial => verdict.is_left_crucial(),
        Property::Bicrucial => verdict.is_bicrucial(),
    };
    if a.output.json {
        #[derive(Serialize)]
        struct Out<'a> {
            property: &'a str,
            holds: bool,
            verdict: &'a apcrucial::Verdict,
        }
        let property = clap::ValueEnum::to_possible_value(&a.property).expect("no skipped variants");
        print_json(&Out { property: property.get_name(), holds, verdict: &verdict });
    } else {
        print!("{}", render::verdict(&verdict));
    }
    Ok(if holds { HOLDS } else { FAILS })
}

fn construct(a: ConstructArgs) -> Result<u8, Exit> {
    let mut spec = ConstructionSpec::new(a.family);
    spec.k = a.k;
    spec.l = a.l;
    spec.n = a.n;
    let first = match a.family {
        Family::Figure1 => a.base.as_deref().map(|t| ("base", t)),
        _ => a.from.as_deref().map(|t| ("from", t)),
    };
    if let Some((flag, text)) = first {
        spec.seeds.push(read_perm(text, flag, &a.input)?);
    }
    if let Some(text) = a.with.as_deref() {
        if spec.seeds.is_empty() {
            return Err(usage("--with needs --from"));
        }
        spec.seeds.push(read_perm(text, "with", &a.input)?);
    }

    match spec.build() {
        Ok(p) => {
            if a.output.json {
                let verdict = match (a.k.or(default_k(a.family)), a.l) {
                    (Some(k), Some(l)) if a.family.target() != Target::AntiMonotone => Some(classify(&p, k, l)),
                    _ => None,
                };
                print_json(&render::Constructed::new(a.family, &p, verdict));
            } else {
                println!("{p}");
            }
            Ok(HOLDS)
        }
        Err(Error::ConstructionInvalid { perm, reason, .. }) => {
            // The raw layout is still useful to see, so it goes to stdout.
            let candidate = match (a.family, &spec.seeds.first(), a.k, a.l, a.n) {
                (Family::Figure1, Some(base), Some(k), Some(l), Some(n)) => {
                    figure1_layout(k, l, n, base).unwrap_or(perm)
                }
                _ => perm,
            };
            if a.output.json {
                print_json(&render::Constructed::failed(a.family, &candidate, &reason));
            } else {
                println!("{candidate}");
            }
            eprintln!("error: {} output fails verification: {reason}", a.family);
            Ok(FAILS)
        }
        Err(e @ (Error::Precondition(_) | Error::LengthMismatch { .. })) => Err(usage(e)),
        Err(e) => {
            eprintln!("error: {e}");
            Ok(FAILS)
        }
    }
}

/// Families whose k is fixed by the name.
fn default_k(family: Family) -> Option<usize> {
    match family {
        Family::Crucial44 | Family::Crucial4l => Some(4),
        Family::Crucial3l | Family::Bicrucial3l => Some(3),
        _ => None,
    }
}

fn open_cache(run: &RunOptions) -> Result<Option<ResultsCache>, Exit> {
    if run.no_cache {
        return Ok(None);
    }
    let path = run.cache.clone().unwrap_or_else(ResultsCache::default_path);
    ResultsCache::open(path).map(Some).map_err(usage)
}

fn check_params(k: usize, l: usize, kind: SearchKind) -> Result<(), Exit> {
    let min = if kind == SearchKind::Anti { 2 } else { 3 };
    if k < min || l < min {
        return Err(usage(format!("--k and --l must be at least {min} for {kind}")));
    }
    Ok(())
}

fn search(a: SearchArgs) -> Result<u8, Exit> {
    let config = a.run.config().map_err(usage)?;
    let mut cache = open_cache(&a.run)?;
    let mut cu = cache.as_mut().map(|cache| CacheUse { cache, force: a.run.force });
    match a.query {
        Query::Exists | Query::Count => {
            check_params(a.k, a.l, a.kind)?;
            let n = a.n.ok_or_else(|| usage(format!("{:?} needs --n", a.query).to_lowercase()))?;
            let count = a.query == Query::Count;
            match cached_search(a.k, a.l, n, a.kind, count, &config, cu.as_mut()) {
                Ok(rec) => {
                    if a.output.json {
                        print_json(&rec);
                    } else {
                        println!("{}", render::record(&rec));
                    }
                    Ok(if count || rec.exists { HOLDS } else { FAILS })
                }
                Err(SearchError::BudgetExhausted { partial }) => {
                    if a.output.json {
                        print_json(&render::Partial { exhausted: true, partial: &partial });
                    } else {
                        println!("{} (incomplete)", render::record(&partial));
                    }
                    eprintln!("error: search budget exhausted at n = {n}; the result above is partial");
                    Ok(EXHAUSTED)
                }
                Err(SearchError::InvalidParameters(msg)) => Err(usage(msg)),
            }
        }
        Query::MinimalCrucial | Query::MinimalBicrucial => {
            check_params(a.k, a.l, SearchKind::Crucial)?;
            let lower = apcrucial::constructions::minimal_length_formula(a.k, a.l).map_err(usage)?;
            let (kind, to) = if a.query == Query::MinimalCrucial {
                (SearchKind::Crucial, lower)
            } else {
                (SearchKind::Bicrucial, 2 * lower)
            };
            let from = a.from.unwrap_or(lower);
            if from == 0 || from > to {
                return Err(usage(format!("--from must be in 1..={to}")));
            }
            match find_minimal(a.k, a.l, kind, from, to, &config, cu.as_mut()) {
                Ok(scan) => {
                    if a.output.json {
                        print_json(&scan);
                    } else {
                        print!("{}", render::scan(&scan));
                    }
                    Ok(if scan.minimal.is_some() { HOLDS } else { FAILS })
                }
                Err(ScanError::Exhausted(ex)) => {
                    if a.output.json {
                        print_json(&ex);
                    } else {
                        for r in &ex.settled {
                            println!("{}", render::record(r));
                        }
                        println!("{} (incomplete)", render::record(&ex.partial));
                    }
                    eprintln!("error: {ex}");
                    Ok(EXHAUSTED)
                }
                Err(ScanError::Invalid(msg)) => Err(usage(msg)),
            }
        }
    }
}

fn classify_cmd(a: ClassifyArgs) -> Result<u8, Exit> {
    check_params(a.k, a.l, a.kind)?;
    let config = a.run.config().map_err(usage)?;
    let mut cache = open_cache(&a.run)?;
    let mut cu = cache.as_mut().map(|cache| CacheUse { cache, force: a.run.force });
    let rows = classify_lengths(a.k, a.l, a.max_n, a.kind, a.count, &config, cu.as_mut());
    if let Some(Err(SearchError::InvalidParameters(msg))) = rows.iter().find(|r| r.is_err()) {
        return Err(usage(msg));
    }
    let exhausted = rows.iter().any(|r| r.is_err());
    if a.output.json {
        let out: Vec<_> = rows
            .iter()
            .map(|r| match r {
                Ok(rec) => render::Row { exhausted: false, record: rec },
                Err(SearchError::BudgetExhausted { partial }) => render::Row { exhausted: true, record: partial },
                Err(SearchError::InvalidParameters(_)) => unreachable!("reported above"),
            })
            .collect();
        print_json(&out);
    } else {
        print!("{}", render::table(&rows));
    }
    if exhausted {
        eprintln!("error: search budget exhausted; rows marked ? are incomplete");
        return Ok(EXHAUSTED);
    }
    Ok(HOLDS)
}

fn verify(a: VerifyArgs) -> Result<u8, Exit> {
    let config = a.run.config().map_err(usage)?;
    let facts = verify_paper_facts(&config);
    if a.output.json {
        print_json(&facts);
    } else {
        for f in &facts {
            println!("{}", render::fact(f));
        }
    }
    let failed = facts.iter().filter(|f| !f.passed && f.source == FactSource::Paper).count();
    let computed_failed = facts.iter().filter(|f| !f.passed && f.source == FactSource::Computed).count();
    if computed_failed > 0 {
        eprintln!("warning: {computed_failed} computed fact(s) differ from their pinned values");
    }
    if failed > 0 {
        eprintln!("error: {failed} published fact(s) failed");
        return Ok(FAILS);
    }
    Ok(HOLDS)
}
