//! Long (3,3)-anti-monotone permutations from shuffles of shorter ones.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `(p_1+n) t_1 (p_2+n) t_2 ... (p_n+n) t_n` for `|p| = |t| = n`.
pub fn shuffle_down(p: &Permutation, t: &Permutation) -> Result<Permutation> {
    if p.len() != t.len() {
        return Err(Error::LengthMismatch {
            what: "shuffle_down needs equal lengths",
            expected: p.len(),
            actual: t.len(),
        });
    }
    let n = p.len() as u32;
    let elems = p
        .shifted(n)
        .zip(t.as_slice().iter().copied())
        .flat_map(|(hi, lo)| [hi, lo])
        .collect();
    Ok(Permutation::from_vec_unchecked(elems))
}

/// `(p_1+n-1) t_1 (p_2+n-1) t_2 ... t_{n-1} (p_n+n-1)` for `|t| = |p| - 1`.
pub fn shuffle_down_odd(p: &Permutation, t: &Permutation) -> Result<Permutation> {
    if p.is_empty() || t.len() + 1 != p.len() {
        return Err(Error::LengthMismatch {
            what: "shuffle_down_odd needs |t| = |p| - 1",
            expected: p.len().saturating_sub(1),
            actual: t.len(),
        });
    }
    let offset = t.len() as u32;
    let mut elems = Vec::with_capacity(p.len() + t.len());
    for (i, hi) in p.shifted(offset).enumerate() {
        elems.push(hi);
        if i < t.len() {
            elems.push(t[i]);
        }
    }
    Ok(Permutation::from_vec_unchecked(elems))
}

/// A (3,3)-anti-monotone permutation of length `n`, from the recursion
/// `f(2m) = shuffle_down(f(m), f(m))`, `f(2m-1) = shuffle_down_odd(f(m), f(m-1))`
/// seeded with `f(1) = 1`, `f(2) = 21`.
pub fn anti_monotone_33(n: usize) -> Permutation {
    fn build(n: usize, memo: &mut HashMap<usize, Permutation>) -> Permutation {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let p = match n {
            0 => Permutation::identity(0),
            1 => Permutation::identity(1),
            2 => Permutation::from_vec_unchecked(vec![2, 1]),
            _ if n.is_multiple_of(2) => {
                let half = build(n / 2, memo);
                shuffle_down(&half, &half).expect("equal halves")
            }
            _ => {
                let m = n.div_ceil(2);
                let big = build(m, memo);
                let small = build(m - 1, memo);
                shuffle_down_odd(&big, &small).expect("lengths differ by one")
            }
        };
        memo.insert(n, p.clone());
        p
    }
    build(n, &mut HashMap::new())
}

fn symmetries(p: &Permutation) -> [Permutation; 4] {
    [p.clone(), p.reverse(), p.complement(), p.reverse_complement()]
}

/// Distinct (3,3)-anti-monotone permutations of length `n`, obtained by
/// applying reverse/complement to the halves of the top-level shuffle and to
/// the result. [`anti_monotone_33`] comes first; the rest are in
/// lexicographic order.
pub fn anti_monotone_33_variants(n: usize) -> Vec<Permutation> {
    let first = anti_monotone_33(n);
    let mut set = BTreeSet::new();
    if n >= 3 {
        let (big, small) = if n.is_multiple_of(2) {
            (anti_monotone_33(n / 2), anti_monotone_33(n / 2))
        } else {
            let m = n.div_ceil(2);
            (anti_monotone_33(m), anti_monotone_33(m - 1))
        };
        for a in symmetries(&big) {
            for b in symmetries(&small) {
                let p = if n.is_multiple_of(2) {
                    shuffle_down(&a, &b)
                } else {
                    shuffle_down_odd(&a, &b)
                }
                .expect("lengths match");
                set.extend(symmetries(&p));
            }
        }
    } else {
        set.extend(symmetries(&first));
    }
    set.remove(&first);
    std::iter::once(first).chain(set).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::is_anti_monotone;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle_down(&p("21"), &p("21")).unwrap(), p("4231"));
        assert_eq!(shuffle_down(&p("1"), &p("1")).unwrap(), p("21"));
        assert_eq!(shuffle_down_odd(&p("21"), &p("1")).unwrap(), p("312"));
        assert_eq!(
            shuffle_down_odd(&p("1"), &Permutation::identity(0)).unwrap(),
            p("1")
        );
    }

    #[test]
    fn shuffle_length_mismatch() {
        assert!(matches!(
            shuffle_down(&p("21"), &p("1")),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            shuffle_down_odd(&p("21"), &p("21")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn recursion_values() {
        assert_eq!(anti_monotone_33(1), p("1"));
        assert_eq!(anti_monotone_33(2), p("21"));
        assert_eq!(anti_monotone_33(3), p("312"));
        assert_eq!(anti_monotone_33(4), p("4231"));
        assert_eq!(anti_monotone_33(0).len(), 0);
    }

    #[test]
    fn variants_are_anti_monotone_and_distinct() {
        for n in 1..=40 {
            let vs = anti_monotone_33_variants(n);
            assert_eq!(vs[0], anti_monotone_33(n));
            let distinct: BTreeSet<_> = vs.iter().collect();
            assert_eq!(distinct.len(), vs.len());
            for v in &vs {
                assert_eq!(v.len(), n);
                assert!(is_anti_monotone(v, 3, 3), "{v}");
            }
        }
    }
}
