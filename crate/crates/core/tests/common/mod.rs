//! Brute-force reference implementations, written directly from the
//! definitions and sharing no code with the library.
#![allow(dead_code)]

use itertools::Itertools;

/// Every `(start, diff)` (1-based) whose length-`m` progression is strictly
/// increasing (`up`) or decreasing.
pub fn occurrences(v: &[u32], m: usize, up: bool) -> Vec<(usize, usize)> {
    let n = v.len();
    let mut out = Vec::new();
    if m == 1 {
        return (1..=n).map(|s| (s, 1)).collect();
    }
    for start in 0..n {
        for diff in 1..n {
            let last = start + (m - 1) * diff;
            if last >= n {
                break;
            }
            let ok = (0..m - 1).all(|j| {
                let (a, b) = (v[start + j * diff], v[start + (j + 1) * diff]);
                if up { a < b } else { a > b }
            });
            if ok {
                out.push((start + 1, diff));
            }
        }
    }
    out
}

pub fn anti(v: &[u32], k: usize, l: usize) -> bool {
    occurrences(v, k, true).is_empty() && occurrences(v, l, false).is_empty()
}

/// Longest increasing or decreasing run with difference `d` ending at
/// 1-based position `i`, by walking backwards.
pub fn run_ending(v: &[u32], i: usize, d: usize, up: bool) -> u32 {
    let mut len = 1;
    let mut j = i - 1;
    while j >= d {
        let (a, b) = (v[j - d], v[j]);
        if (up && a < b) || (!up && a > b) {
            len += 1;
            j -= d;
        } else {
            break;
        }
    }
    len
}

pub fn extend(v: &[u32], x: u32, right: bool) -> Vec<u32> {
    let bumped = v.iter().map(|&y| if y >= x { y + 1 } else { y });
    if right {
        bumped.chain([x]).collect()
    } else {
        std::iter::once(x).chain(bumped).collect()
    }
}

pub fn crucial(v: &[u32], k: usize, l: usize) -> bool {
    anti(v, k, l) && (1..=v.len() as u32 + 1).all(|x| !anti(&extend(v, x, true), k, l))
}

pub fn left_crucial(v: &[u32], k: usize, l: usize) -> bool {
    anti(v, k, l) && (1..=v.len() as u32 + 1).all(|x| !anti(&extend(v, x, false), k, l))
}

pub fn bicrucial(v: &[u32], k: usize, l: usize) -> bool {
    crucial(v, k, l) && left_crucial(v, k, l)
}

pub fn all_perms(n: usize) -> impl Iterator<Item = Vec<u32>> {
    (1..=n as u32).permutations(n)
}

/// Rank-based reduction of distinct values.
pub fn reduce(v: &[u32]) -> Vec<u32> {
    v.iter().map(|&x| v.iter().filter(|&&y| y <= x).count() as u32).collect()
}
