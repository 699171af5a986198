//! (3,l)-bicrucial permutations: a descending block of top values placed in
//! front of a (3,l)-crucial permutation of length `2l`.

use super::ensure_bicrucial;
use super::families::{construct_crucial_3l, search_for};
use crate::error::{Error, Result};
use crate::pattern::RunTable;
use crate::perm::Permutation;
use crate::search::SearchKind;

/// Known examples for `l = 4, 5, 6`.
pub fn known_bicrucial_3l(l: usize) -> Option<Permutation> {
    let v: &[u32] = match l {
        4 => &[10, 11, 9, 1, 7, 6, 8, 2, 5, 4, 3],
        5 => &[13, 14, 12, 11, 1, 9, 8, 10, 7, 2, 6, 5, 4, 3],
        6 => &[14, 15, 13, 1, 11, 10, 12, 9, 8, 2, 7, 6, 5, 4, 3],
        _ => return None,
    };
    Some(Permutation::from_vec_unchecked(v.to_vec()))
}

/// `3l - 3 + (l mod 3)`. The `l = 4` example is one longer than this.
pub fn bicrucial_3l_formula_length(l: usize) -> usize {
    3 * l - 3 + l % 3
}

/// `t-1, t, t-2, t-3, ..., t-p+1` followed by `suffix`, where `t = |suffix| + p`.
fn with_top_block(suffix: &Permutation, p: usize) -> Permutation {
    let t = (suffix.len() + p) as u32;
    let mut out = Vec::with_capacity(suffix.len() + p);
    if p >= 2 {
        out.extend([t - 1, t]);
        out.extend((2..p as u32).map(|j| t - j));
    } else if p == 1 {
        out.push(t);
    }
    out.extend_from_slice(suffix.as_slice());
    Permutation::from_vec_unchecked(out)
}

/// A (3,l)-bicrucial permutation for `l >= 4`.
///
/// `l = 4, 5, 6` return the known examples. Larger `l` try the top-block
/// template over `construct_crucial_3l(l)`, starting at the formula length
/// and growing the block; if none verifies, the suffix is pinned and the
/// prefix found by search.
pub fn construct_bicrucial_3l(l: usize) -> Result<Permutation> {
    if l < 4 {
        return Err(Error::Domain(format!("(3,l)-bicrucial family needs l >= 4 (got {l})")));
    }
    let p = match known_bicrucial_3l(l) {
        Some(p) => ensure_bicrucial("bicrucial-3l", p, 3, l)?,
        None => from_template(l)?,
    };
    let table = RunTable::build(&p);
    if (1..=p.len()).any(|i| table.down(i, 3) as usize >= l) {
        return Err(Error::ConstructionInvalid {
            name: "bicrucial-3l",
            perm: p,
            reason: format!("decreasing run of length {l} at difference 3"),
        });
    }
    Ok(p)
}

fn from_template(l: usize) -> Result<Permutation> {
    let suffix = construct_crucial_3l(l)?;
    let start = bicrucial_3l_formula_length(l) - 2 * l;
    for p in start.max(1)..=start + 3 {
        if let Ok(q) = ensure_bicrucial("bicrucial-3l", with_top_block(&suffix, p), 3, l) {
            return Ok(q);
        }
    }
    let mut last = None;
    for p in start.max(1)..=start + 3 {
        let n = 2 * l + p;
        let fixed: Vec<(usize, u32)> = suffix.as_slice().iter().enumerate().map(|(i, &v)| (p + i + 1, v)).collect();
        match search_for("bicrucial-3l", 3, l, n, SearchKind::Bicrucial, &fixed) {
            Ok(q) => return ensure_bicrucial("bicrucial-3l", q, 3, l),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}
