//! Self-check suite: published facts plus regression-pinned computed values.

use std::ops::ControlFlow;

use serde::Serialize;

use super::{
    count_anti_monotone, enumerate_anti_monotone, exists_crucial, find_minimal_bicrucial,
    find_minimal_crucial_from, search, SearchConfig, SearchKind,
};
use crate::constructions::{
    construct_crucial_44, construct_crucial_4l, figure1_layout, known_bicrucial_3l,
};
use crate::crucial::{is_bicrucial, is_crucial};
use crate::perm::{reduce, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactSource {
    /// Stated in the literature.
    Paper,
    /// Found by this program and pinned against regressions.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub name: String,
    pub source: FactSource,
    pub passed: bool,
    pub detail: String,
}

/// Number of (3,3)-crucial permutations of length 7.
pub const PINNED_CRUCIAL_33_AT_7: u64 = 8;
/// Smallest length of a (3,4)-bicrucial permutation.
pub const PINNED_MINIMAL_BICRUCIAL_34: usize = 9;
/// Number of (3,3)-anti-monotone permutations of length 12.
pub const PINNED_ANTI_33_AT_12: u64 = 6128;

fn p(s: &str) -> Permutation {
    s.parse().expect("fixture parses")
}

fn show<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or("-".to_string(), |x| x.to_string())
}

fn fact(name: impl Into<String>, source: FactSource, passed: bool, detail: impl Into<String>) -> Fact {
    Fact { name: name.into(), source, passed, detail: detail.into() }
}

fn fixtures() -> Vec<Fact> {
    use FactSource::Paper;
    let mut out = vec![
        fact("216453 is (3,3)-crucial", Paper, is_crucial(&p("216453"), 3, 3), ""),
        fact("73418562 is (3,3)-bicrucial", Paper, is_bicrucial(&p("73418562"), 3, 3), ""),
        {
            let r = reduce(&[2, 7, 5, 4]).map(|q| q.to_string()).unwrap_or_default();
            fact("reduce(2754) = 1432", Paper, r == "1432", r)
        },
        {
            let r = p("24135").reverse().to_string();
            fact("reverse(24135) = 53142", Paper, r == "53142", r)
        },
        {
            let c = p("24135").complement().to_string();
            fact("complement(24135) = 42531", Paper, c == "42531", c)
        },
        {
            let got: Vec<String> = p("231").extensions_right().iter().map(|q| q.to_string()).collect();
            fact(
                "right extensions of 231",
                Paper,
                got == ["3421", "3412", "2413", "2314"],
                got.join(","),
            )
        },
        {
            let got: Vec<String> = p("12").extensions_left().iter().map(|q| q.to_string()).collect();
            fact("left extensions of 12", Paper, got == ["123", "213", "312"], got.join(","))
        },
        {
            let base = p("1(17)9(13)5(15)7(11)3(16)8(12)4(14)6(10)2");
            let got = figure1_layout(4, 5, 17, &base).map(|q| q.to_string()).unwrap_or_else(|e| e.to_string());
            fact(
                "k = 4, l = 5 layout of the length-17 example",
                Paper,
                got == "4(13)1(10)6(11)725(12)893(17)(16)(15)(14)",
                got,
            )
        },
        fact(
            "185926743(12)(11)(10) is (4,4)-crucial",
            Paper,
            construct_crucial_44().is_ok_and(|q| q == p("185926743(12)(11)(10)") && is_crucial(&q, 4, 4)),
            "",
        ),
    ];
    for (l, s) in [(4, "187925463(12)(11)(10)"), (5, "1(10)9(11)8265743(15)(14)(13)(12)")] {
        out.push(fact(
            format!("{s} is (4,{l})-crucial"),
            Paper,
            construct_crucial_4l(l).is_ok_and(|q| q == p(s) && is_crucial(&q, 4, l)),
            "",
        ));
    }
    for l in 4..=6 {
        let q = known_bicrucial_3l(l).expect("known");
        out.push(fact(format!("{q} is (3,{l})-bicrucial"), Paper, is_bicrucial(&q, 3, l), ""));
    }
    out
}

fn minimal_crucial(k: usize, l: usize, expected: usize, config: &SearchConfig) -> Fact {
    let name = format!("shortest ({k},{l})-crucial has length {expected}");
    match find_minimal_crucial_from(k, l, 1, config) {
        Ok(m) => {
            let detail = match (m.minimal, m.witness()) {
                (Some(n), Some(w)) => format!("n = {n}, witness {w}"),
                _ => "none found".to_string(),
            };
            fact(name, FactSource::Paper, m.minimal == Some(expected), detail)
        }
        Err(e) => fact(name, FactSource::Paper, false, e.to_string()),
    }
}

fn all_crucial_8_are_bicrucial(config: &SearchConfig) -> Fact {
    let name = "every (3,3)-crucial permutation of length 8 is bicrucial";
    let mut crucial = 0u64;
    let mut counterexample = None;
    let visited = enumerate_anti_monotone(3, 3, 8, &config.budget, |v| {
        let q = Permutation::new(v.to_vec()).expect("engine yields permutations");
        if is_crucial(&q, 3, 3) {
            crucial += 1;
            if !is_bicrucial(&q, 3, 3) {
                counterexample = Some(q);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    match (visited, counterexample) {
        (Ok(_), None) => fact(name, FactSource::Paper, crucial > 0, format!("{crucial} crucial, all bicrucial")),
        (Ok(_), Some(q)) => fact(name, FactSource::Paper, false, format!("{q} is crucial but not bicrucial")),
        (Err(e), _) => fact(name, FactSource::Paper, false, e.to_string()),
    }
}

fn computed(config: &SearchConfig) -> Vec<Fact> {
    use FactSource::Computed;
    let mut out = Vec::new();

    let name = format!("{PINNED_CRUCIAL_33_AT_7} (3,3)-crucial permutations of length 7");
    out.push(match search(3, 3, 7, SearchKind::Crucial, true, config) {
        Ok(r) => fact(
            name,
            Computed,
            r.count == Some(PINNED_CRUCIAL_33_AT_7),
            format!(
                "count {}, first {}",
                show(r.count),
                show(r.witness)
            ),
        ),
        Err(e) => fact(name, Computed, false, e.to_string()),
    });

    let name = format!("shortest (3,4)-bicrucial has length {PINNED_MINIMAL_BICRUCIAL_34}");
    out.push(match find_minimal_bicrucial(3, 4, config) {
        Ok(m) => fact(
            name,
            Computed,
            m.minimal == Some(PINNED_MINIMAL_BICRUCIAL_34),
            format!(
                "n = {}, witness {}",
                show(m.minimal),
                show(m.witness())
            ),
        ),
        Err(e) => fact(name, Computed, false, e.to_string()),
    });

    let name = format!("{PINNED_ANTI_33_AT_12} (3,3)-anti-monotone permutations of length 12");
    out.push(match count_anti_monotone(3, 3, 12, config) {
        Ok(r) => fact(name, Computed, r.count == Some(PINNED_ANTI_33_AT_12), format!("count {}", show(r.count))),
        Err(e) => fact(name, Computed, false, e.to_string()),
    });
    out
}

/// Runs every check. Search facts use `config`; a budget that runs out makes
/// the affected fact fail with the exhaustion message as detail.
pub fn verify_paper_facts(config: &SearchConfig) -> Vec<Fact> {
    let mut out = fixtures();
    for (k, l, m) in [(3, 3, 6), (3, 4, 8), (4, 3, 8), (3, 5, 10)] {
        out.push(minimal_crucial(k, l, m, config));
    }
    let name = "no (3,3)-crucial permutation of length 9";
    out.push(match exists_crucial(3, 3, 9, config) {
        Ok(r) => fact(name, FactSource::Paper, !r.exists, format!("{} nodes", r.nodes)),
        Err(e) => fact(name, FactSource::Paper, false, e.to_string()),
    });
    let name = "shortest (3,3)-bicrucial has length 8";
    out.push(match find_minimal_bicrucial(3, 3, config) {
        Ok(m) => fact(name, FactSource::Paper, m.minimal == Some(8), format!("n = {}", show(m.minimal))),
        Err(e) => fact(name, FactSource::Paper, false, e.to_string()),
    });
    out.push(all_crucial_8_are_bicrucial(config));
    out.extend(computed(config));
    out
}
