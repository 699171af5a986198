//! Explicit `(k,l)`-crucial permutations of minimal and arbitrary length.

use super::anti::{anti_monotone_33, anti_monotone_33_variants};
use super::doubling::{double_even, double_odd};
use super::{ensure_crucial, minimal_length_formula, search_fallback_config};
use crate::crucial::require_anti_monotone;
use crate::error::{Error, Result};
use crate::pattern::RunTable;
use crate::perm::{reduce_distinct, Permutation};
use crate::search::{find_first_with_fixed, SearchError, SearchKind};

/// Largest length for which a missing family member is looked up by
/// exhaustive search instead of being reported unsupported.
pub const SEARCH_FALLBACK_MAX_N: usize = 12;

/// The top/bottom block layout applied to `base`, without verification.
///
/// Counted from the right, positions `1..l` get the values
/// `n, n-1, ..., n-l+2` (decreasing left to right), positions
/// `l, 2l, ..., (k-1)l` get `1, 2, ..., k-1` (increasing left to right),
/// and every other position keeps the relative order of `base`, re-valued
/// onto `k..=n-l+1`.
pub fn figure1_layout(k: usize, l: usize, n: usize, base: &Permutation) -> Result<Permutation> {
    if k < 2 || l < 2 {
        return Err(Error::Domain(format!("block layout needs k, l >= 2 (got k = {k}, l = {l})")));
    }
    if n < l * (k - 1) {
        return Err(Error::Domain(format!(
            "block layout needs n >= l(k-1) = {} (got n = {n})",
            l * (k - 1)
        )));
    }
    if base.len() != n {
        return Err(Error::LengthMismatch { what: "block layout base length", expected: n, actual: base.len() });
    }
    let mut out = vec![0u32; n];
    // Left to right the top block reads n, n-1, ..., n-l+2.
    for (idx, pos) in (n - (l - 1)..n).enumerate() {
        out[pos] = (n - idx) as u32;
    }
    for j in 1..k {
        out[n - l * j] = (k - j) as u32;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| out[i] == 0).collect();
    let ranks = reduce_distinct(&rest.iter().map(|&i| base[i]).collect::<Vec<_>>());
    for (&pos, &rank) in rest.iter().zip(ranks.as_slice()) {
        out[pos] = rank + k as u32 - 1;
    }
    Ok(Permutation::from_vec_unchecked(out))
}

/// Verified block-layout construction for `4 <= k <= l`, `n >= l(k-1)`, over a
/// (3,3)-anti-monotone `base` (default [`anti_monotone_33`]).
pub fn construct_figure1(k: usize, l: usize, n: usize, base: Option<&Permutation>) -> Result<Permutation> {
    if k < 4 || k > l {
        return Err(Error::Domain(format!("block construction needs 4 <= k <= l (got k = {k}, l = {l})")));
    }
    let default;
    let base = match base {
        Some(b) => b,
        None => {
            default = anti_monotone_33(n);
            &default
        }
    };
    require_anti_monotone(base, 3, 3).map_err(|_| {
        Error::Precondition(format!("block layout base {base} is not (3,3)-anti-monotone"))
    })?;
    let out = figure1_layout(k, l, n, base)?;
    ensure_crucial("figure1", out, k, l)
}

/// The block layout over successive base variants until one verifies.
fn figure1_any_base(k: usize, l: usize, n: usize) -> Result<Permutation> {
    let mut last_err = None;
    for base in anti_monotone_33_variants(n) {
        if k == 4 && l == 4 && n >= 9 && base.at(n + 1 - 6) > base.at(n + 1 - 9) {
            continue;
        }
        match construct_figure1(k, l, n, Some(&base)) {
            Ok(p) => return Ok(p),
            Err(e @ Error::ConstructionInvalid { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::NotFound {
        what: format!("a block layout base for ({k},{l}) at n = {n}"),
    }))
}

/// The minimal (4,4)-crucial permutation `185926743(12)(11)(10)`.
pub fn construct_crucial_44() -> Result<Permutation> {
    let p = Permutation::from_vec_unchecked(vec![1, 8, 5, 9, 2, 6, 7, 4, 3, 12, 11, 10]);
    ensure_crucial("crucial-44", p, 4, 4)
}

/// A (4,4)-crucial permutation of any length `n >= 12`: the block layout
/// over the first base variant whose 6th value from the right is below its
/// 9th, kept only if it verifies.
pub fn construct_crucial_44_of_length(n: usize) -> Result<Permutation> {
    if n < 12 {
        return Err(Error::Domain(format!("(4,4)-crucial permutations need n >= 12 (got {n})")));
    }
    if n == 12 {
        return construct_crucial_44();
    }
    figure1_any_base(4, 4, n)
}

/// The block pattern shared by both middle blocks of the (4,l) family:
/// `l-2, l-3, l-1, l-4, l-5, ..., 1`.
fn four_l_block(l: usize) -> Vec<u32> {
    let l = l as u32;
    let mut block = vec![l - 2, l - 3, l - 1];
    block.extend((1..l.saturating_sub(3)).rev());
    block
}

/// Template for the (4,l) family of length `3l`: `1`, a high block, `2`, a
/// low block, `3`, then the top `l-1` values decreasing.
pub(crate) fn four_l_template(l: usize) -> Permutation {
    let n = 3 * l;
    let block = four_l_block(l);
    let mut out = Vec::with_capacity(n);
    out.push(1);
    out.extend(block.iter().map(|&b| b + l as u32 + 2));
    out.push(2);
    out.extend(block.iter().map(|&b| b + 3));
    out.push(3);
    out.extend((2 * l as u32 + 2..=n as u32).rev());
    Permutation::from_vec_unchecked(out)
}

/// A (4,l)-crucial permutation of length `3l`.
///
/// `l = 4, 5` return the known examples; larger `l` instantiate the same
/// block template and fall back to a search with the blocking elements
/// pinned when the template does not verify.
pub fn construct_crucial_4l(l: usize) -> Result<Permutation> {
    if l < 4 {
        return Err(Error::Domain(format!("(4,l) family needs l >= 4 (got {l})")));
    }
    let known: Option<Vec<u32>> = match l {
        4 => Some(vec![1, 8, 7, 9, 2, 5, 4, 6, 3, 12, 11, 10]),
        5 => Some(vec![1, 10, 9, 11, 8, 2, 6, 5, 7, 4, 3, 15, 14, 13, 12]),
        _ => None,
    };
    if let Some(v) = known {
        return ensure_crucial("crucial-4l", Permutation::from_vec_unchecked(v), 4, l);
    }
    match ensure_crucial("crucial-4l", four_l_template(l), 4, l) {
        Ok(p) => Ok(p),
        Err(_) => {
            let n = 3 * l;
            let mut fixed = vec![(1, 1), (l + 1, 2), (2 * l + 1, 3)];
            fixed.extend((1..l).map(|j| (2 * l + 1 + j, (n + 1 - j) as u32)));
            search_for("crucial-4l", 4, l, n, SearchKind::Crucial, &fixed)
        }
    }
}

/// Template for the (3,l) family of length `2l`:
/// `1, 2l-1, 2l-2, 2l, 2l-3, ..., l+2, 2, l+1, l, ..., 3`.
pub(crate) fn three_l_template(l: usize) -> Permutation {
    let l32 = l as u32;
    let mut out = vec![1, 2 * l32 - 1, 2 * l32 - 2, 2 * l32];
    out.extend((l32 + 2..=2 * l32 - 3).rev());
    out.push(2);
    out.extend((3..=l32 + 1).rev());
    Permutation::from_vec_unchecked(out)
}

/// A (3,l)-crucial permutation of length `2l`.
///
/// `l = 3` is `216453`; `l = 4, 5, 6` are the rightmost `2l` entries of the
/// known (3,l)-bicrucial examples; larger `l` use the template those share,
/// with a pinned search as fallback. Besides cruciality, the output is
/// checked to have no decreasing run of length `l` at any difference.
pub fn construct_crucial_3l(l: usize) -> Result<Permutation> {
    if l < 3 {
        return Err(Error::Domain(format!("(3,l) family needs l >= 3 (got {l})")));
    }
    let p = match l {
        3 => ensure_crucial("crucial-3l", Permutation::from_vec_unchecked(vec![2, 1, 6, 4, 5, 3]), 3, 3)?,
        4..=6 => {
            let bicrucial = super::bicrucial::known_bicrucial_3l(l).expect("known for 4..=6");
            let suffix = &bicrucial.as_slice()[bicrucial.len() - 2 * l..];
            ensure_crucial("crucial-3l", reduce_distinct(suffix), 3, l)?
        }
        _ => match ensure_crucial("crucial-3l", three_l_template(l), 3, l) {
            Ok(p) => p,
            Err(_) => {
                let n = 2 * l;
                let mut fixed = vec![(1, 1), (l + 1, 2)];
                fixed.extend((0..l - 1).map(|j| (l + 2 + j, (l + 1 - j) as u32)));
                search_for("crucial-3l", 3, l, n, SearchKind::Crucial, &fixed)?
            }
        },
    };
    let table = RunTable::build(&p);
    let bad_down = (1..p.len()).any(|d| (1..=p.len()).any(|i| table.down(i, d) as usize >= l));
    if bad_down {
        return Err(Error::ConstructionInvalid {
            name: "crucial-3l",
            perm: p,
            reason: format!("decreasing arithmetic run of length {l}"),
        });
    }
    Ok(p)
}

/// Pinned search used when a template fails verification.
pub(crate) fn search_for(
    name: &'static str,
    k: usize,
    l: usize,
    n: usize,
    kind: SearchKind,
    fixed: &[(usize, u32)],
) -> Result<Permutation> {
    match find_first_with_fixed(k, l, n, kind, fixed, &search_fallback_config()) {
        Ok(rec) => rec.witness.ok_or_else(|| Error::NotFound {
            what: format!("{name} with k = {k}, l = {l}, n = {n}"),
        }),
        Err(SearchError::BudgetExhausted { .. }) => Err(Error::NotFound {
            what: format!("{name} with k = {k}, l = {l}, n = {n} (search budget exhausted)"),
        }),
        Err(SearchError::InvalidParameters(msg)) => Err(Error::Domain(msg)),
    }
}

/// A `(k,l)`-crucial permutation of length `n`.
///
/// For `k > l` this is the complement of the `(l,k)` answer. Otherwise:
/// `min = 3` uses the (3,l) family at the minimal length; `min = 4` uses the
/// (4,4) or (4,l) family at the minimal length and verified block layouts
/// above it; `min >= 5` uses the block layout for every `n >= l(k-1)`. Lengths that
/// none of these reach are built by doubling a crucial permutation of
/// length `n / 2`, or found by exhaustive search when `n` is small.
pub fn construct_crucial(k: usize, l: usize, n: usize) -> Result<Permutation> {
    let m = minimal_length_formula(k, l)?;
    if n < m {
        return Err(Error::Domain(format!(
            "no ({k},{l})-crucial permutation is shorter than {m} (got n = {n})"
        )));
    }
    if k > l {
        let p = construct_crucial(l, k, n)?.complement();
        return ensure_crucial("crucial", p, k, l);
    }
    let direct = match (k, n == m) {
        (3, true) => construct_crucial_3l(l),
        (4, true) if l == 4 => construct_crucial_44(),
        (4, true) => construct_crucial_4l(l),
        (4, false) => figure1_any_base(4, l, n),
        (5.., _) => construct_figure1(k, l, n, None).or_else(|_| figure1_any_base(k, l, n)),
        _ => Err(unsupported(k, l, n)),
    };
    match direct {
        Ok(p) => Ok(p),
        Err(Error::Domain(msg)) => Err(Error::Domain(msg)),
        Err(_) => by_doubling_or_search(k, l, n),
    }
}

fn unsupported(k: usize, l: usize, n: usize) -> Error {
    let m = minimal_length_formula(k, l).unwrap_or(0);
    Error::Unsupported {
        params: format!("k = {k}, l = {l}, n = {n}"),
        hint: format!(
            "supported: the minimal length {m}, lengths reached by doubling (2q, 2q+1 for supported q), \
             and n <= {SEARCH_FALLBACK_MAX_N} via exhaustive search"
        ),
    }
}

fn by_doubling_or_search(k: usize, l: usize, n: usize) -> Result<Permutation> {
    let m = minimal_length_formula(k, l)?;
    let q = n / 2;
    if q >= m {
        if let Ok(c) = construct_crucial(k, l, q) {
            return if n.is_multiple_of(2) {
                double_even(&c, &anti_monotone_33(q), k, l)
            } else {
                double_odd(&c, &anti_monotone_33(q + 1), k, l)
            };
        }
    }
    if n <= SEARCH_FALLBACK_MAX_N {
        return search_for("crucial", k, l, n, SearchKind::Crucial, &[]);
    }
    Err(unsupported(k, l, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crucial::{is_crucial, is_crucial_naive};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn figure1_layout_reproduces_worked_example() {
        let base = p("1(17)9(13)5(15)7(11)3(16)8(12)4(14)6(10)2");
        let out = figure1_layout(4, 5, 17, &base).unwrap();
        assert_eq!(out.to_string(), "4(13)1(10)6(11)725(12)893(17)(16)(15)(14)");
        // Verification rejects it: it is not (4,5)-anti-monotone.
        assert!(matches!(
            construct_figure1(4, 5, 17, Some(&base)),
            Err(Error::ConstructionInvalid { .. })
        ));
    }

    #[test]
    fn figure1_domain_errors() {
        assert!(matches!(construct_figure1(5, 5, 19, None), Err(Error::Domain(_))));
        assert!(matches!(construct_figure1(6, 5, 30, None), Err(Error::Domain(_))));
        assert!(matches!(construct_figure1(3, 5, 30, None), Err(Error::Domain(_))));
        assert!(matches!(
            construct_figure1(5, 5, 20, Some(&p("123"))),
            Err(Error::LengthMismatch { .. }) | Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn figure1_five_five() {
        let q = construct_figure1(5, 5, 20, None).unwrap();
        assert_eq!(q.len(), 20);
        assert!(is_crucial_naive(&q, 5, 5));
    }

    #[test]
    fn figure1_five_six_sweep() {
        for n in 24..=34 {
            let q = construct_figure1(5, 6, n, None).unwrap();
            assert!(is_crucial_naive(&q, 5, 6), "n = {n}");
        }
    }

    #[test]
    fn figure1_keeps_base_order_elsewhere() {
        let (k, l, n) = (5, 6, 30);
        let base = anti_monotone_33(n);
        let out = construct_figure1(k, l, n, Some(&base)).unwrap();
        let designated: Vec<usize> = (1..l).map(|j| n + 1 - j).chain((1..k).map(|j| n + 1 - l * j)).collect();
        let rest: Vec<usize> = (1..=n).filter(|i| !designated.contains(i)).collect();
        assert_eq!(out.pattern_at(rest.iter().copied()), base.pattern_at(rest.iter().copied()));
    }

    #[test]
    fn fixture_44() {
        let q = construct_crucial_44().unwrap();
        assert_eq!(q, p("185926743(12)(11)(10)"));
        assert_eq!(q.len(), 12);
        assert!(is_crucial_naive(&q, 4, 4));
    }

    #[test]
    fn four_four_arbitrary_lengths() {
        for n in 12..=30 {
            let q = construct_crucial_44_of_length(n).unwrap();
            assert_eq!(q.len(), n);
            assert!(is_crucial_naive(&q, 4, 4), "n = {n}");
        }
    }

    #[test]
    fn four_l_fixtures() {
        assert_eq!(construct_crucial_4l(4).unwrap(), p("187925463(12)(11)(10)"));
        assert_eq!(construct_crucial_4l(5).unwrap(), p("1(10)9(11)8265743(15)(14)(13)(12)"));
        assert_eq!(four_l_template(4), construct_crucial_4l(4).unwrap());
        assert_eq!(four_l_template(5), construct_crucial_4l(5).unwrap());
    }

    #[test]
    fn four_l_larger() {
        for l in 6..=9 {
            let q = construct_crucial_4l(l).unwrap();
            assert_eq!(q.len(), 3 * l);
            assert!(is_crucial_naive(&q, 4, l), "l = {l}");
        }
    }

    #[test]
    fn three_l_family() {
        assert_eq!(construct_crucial_3l(3).unwrap(), p("216453"));
        assert_eq!(construct_crucial_3l(4).unwrap(), p("17682543"));
        assert_eq!(construct_crucial_3l(5).unwrap(), p("198(10)726543"));
        for l in 4..=6 {
            assert_eq!(three_l_template(l), construct_crucial_3l(l).unwrap());
        }
        for l in 3..=12 {
            let q = construct_crucial_3l(l).unwrap();
            assert_eq!(q.len(), 2 * l);
            assert!(is_crucial_naive(&q, 3, l), "l = {l}");
        }
    }

    #[test]
    fn dispatch() {
        assert_eq!(construct_crucial(3, 3, 6).unwrap(), p("216453"));
        assert_eq!(construct_crucial(5, 5, 20).unwrap(), construct_figure1(5, 5, 20, None).unwrap());
        let q = construct_crucial(6, 5, 30).unwrap();
        assert_eq!(q, construct_figure1(5, 6, 30, None).unwrap().complement());
        assert!(is_crucial(&q, 6, 5));
        assert!(matches!(construct_crucial(3, 3, 5), Err(Error::Domain(_))));
        assert!(matches!(construct_crucial(2, 3, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn dispatch_small_minimum_lengths() {
        for (k, l, n) in [(3, 3, 8), (3, 3, 12), (3, 3, 13), (3, 4, 16), (4, 3, 17), (4, 4, 13), (4, 5, 16), (3, 5, 20)] {
            let q = construct_crucial(k, l, n).unwrap();
            assert_eq!(q.len(), n);
            assert!(is_crucial_naive(&q, k, l), "({k},{l},{n})");
        }
    }

    #[test]
    fn dispatch_search_and_unsupported_lengths() {
        for n in [7, 14, 15] {
            let q = construct_crucial(3, 3, n).unwrap();
            assert!(is_crucial_naive(&q, 3, 3), "n = {n}: {q}");
        }
        // None exist at n = 9, and n = 18 halves to 9.
        assert!(matches!(construct_crucial(3, 3, 9), Err(Error::NotFound { .. })));
        assert!(matches!(construct_crucial(3, 3, 18), Err(Error::Unsupported { .. })));
    }
}
