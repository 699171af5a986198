//! Interleavings of a crucial (or bicrucial) permutation with a smaller-valued
//! anti-monotone one.
//!
//! The "black" permutation takes the top values and every other position;
//! the "white" one takes the bottom values and the remaining positions. An
//! odd difference alternates colours, so its monotone runs have length at
//! most 2; an even difference stays within one colour. The colour that must
//! block extensions on a side occupies the positions of the same parity as
//! the would-be new position on that side.

use super::{ensure_bicrucial, ensure_crucial};
use crate::crucial::{is_bicrucial, is_crucial};
use crate::error::{Error, Result};
use crate::pattern::is_anti_monotone;
use crate::perm::Permutation;

/// Interleaves `first` (at positions 1, 3, 5, ...) with `second` (at 2, 4, ...).
fn interleave(first: impl Iterator<Item = u32>, second: impl Iterator<Item = u32>, len: usize) -> Permutation {
    let mut out = Vec::with_capacity(len);
    let mut first = first.peekable();
    let mut second = second.peekable();
    while first.peek().is_some() || second.peek().is_some() {
        out.extend(first.next());
        out.extend(second.next());
    }
    debug_assert_eq!(out.len(), len);
    Permutation::from_vec_unchecked(out)
}

fn require_crucial(c: &Permutation, k: usize, l: usize, what: &str) -> Result<()> {
    if is_crucial(c, k, l) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} {c} is not ({k},{l})-crucial")))
    }
}

fn require_filler(t: &Permutation, k: usize, l: usize) -> Result<()> {
    if is_anti_monotone(t, k, l) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("filler {t} is not ({k},{l})-anti-monotone")))
    }
}

fn require_len(t: &Permutation, expected: usize, what: &'static str) -> Result<()> {
    if t.len() == expected {
        Ok(())
    } else {
        Err(Error::LengthMismatch { what, expected, actual: t.len() })
    }
}

/// Length `2n + 1`: `t` (length `n + 1`) on the odd positions, `c + (n+1)`
/// on the even ones. `t` may be any `(k,l)`-anti-monotone permutation, in
/// particular any (3,3)-anti-monotone one.
pub fn double_odd(c: &Permutation, t: &Permutation, k: usize, l: usize) -> Result<Permutation> {
    require_len(t, c.len() + 1, "double_odd filler must have length n + 1")?;
    require_crucial(c, k, l, "double_odd input")?;
    require_filler(t, k, l)?;
    let n = c.len();
    let out = interleave(t.as_slice().iter().copied(), c.shifted(n as u32 + 1), 2 * n + 1);
    ensure_crucial("double-odd", out, k, l)
}

/// Length `2n`: `c + n` on the odd positions, `t` (length `n`) on the even.
pub fn double_even(c: &Permutation, t: &Permutation, k: usize, l: usize) -> Result<Permutation> {
    require_len(t, c.len(), "double_even filler must have length n")?;
    require_crucial(c, k, l, "double_even input")?;
    require_filler(t, k, l)?;
    let n = c.len();
    let out = interleave(c.shifted(n as u32), t.as_slice().iter().copied(), 2 * n);
    ensure_crucial("double-even", out, k, l)
}

/// Bicrucial permutation of length `2n` from a crucial `w` of length `n`:
/// `w + n` on the odd positions blocks the right, and the reverse
/// complement of `w` on the even positions blocks the left.
pub fn make_bicrucial(w: &Permutation, k: usize, l: usize) -> Result<Permutation> {
    require_crucial(w, k, l, "make_bicrucial input")?;
    let n = w.len();
    let whites = w.reverse_complement();
    let out = interleave(w.shifted(n as u32), whites.as_slice().iter().copied(), 2 * n);
    ensure_bicrucial("make-bicrucial", out, k, l)
}

/// Bicrucial permutation of odd length `2n + 1` from a bicrucial `b` of
/// length `n`: `t` (length `n + 1`) on the odd positions and `b + (n+1)` on
/// the even ones, so both new end positions fall on `b`'s parity.
pub fn extend_bicrucial_odd(b: &Permutation, t: &Permutation, k: usize, l: usize) -> Result<Permutation> {
    require_len(t, b.len() + 1, "extend_bicrucial_odd filler must have length n + 1")?;
    if !is_bicrucial(b, k, l) {
        return Err(Error::Precondition(format!("{b} is not ({k},{l})-bicrucial")));
    }
    require_filler(t, k, l)?;
    let n = b.len();
    let out = interleave(t.as_slice().iter().copied(), b.shifted(n as u32 + 1), 2 * n + 1);
    ensure_bicrucial("extend-bicrucial-odd", out, k, l)
}
