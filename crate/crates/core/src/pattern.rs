//! Arithmetic occurrences of the monotone patterns `12...m` and `m...21`.
//!
//! [`RunTable`] stores, for every position `i` and difference `d`, the length
//! of the longest strictly increasing (and decreasing) arithmetic run with
//! difference `d` that ends at `i`. Every monotone arithmetic occurrence is a
//! window of such a run, so the table answers all detection queries.

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// An arithmetic occurrence of `12...m` (up) or `m...21` (down), at 1-based
/// positions `start, start + diff, ..., start + (len - 1) * diff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Occurrence {
    pub start: usize,
    pub diff: usize,
    pub len: usize,
    pub direction: Direction,
}

impl Occurrence {
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |j| self.start + j * self.diff)
    }

    pub fn end(&self) -> usize {
        self.start + (self.len - 1) * self.diff
    }
}

/// Per-difference monotone run lengths ending at each position.
///
/// Positions and differences are 1-based: `up(i, d)` is defined for
/// `1 <= i <= n` and `1 <= d < n`. Runs that cannot reach back a full
/// difference have length 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTable {
    n: usize,
    up: Vec<u32>,
    down: Vec<u32>,
}

impl RunTable {
    pub fn build(p: &Permutation) -> Self {
        let n = p.len();
        let width = n.max(1);
        let mut up = vec![1u32; n * width];
        let mut down = vec![1u32; n * width];
        let v = p.as_slice();
        for i in 0..n {
            for d in 1..=i {
                let j = i - d;
                if v[j] < v[i] {
                    up[i * width + d] = up[j * width + d] + 1;
                } else {
                    down[i * width + d] = down[j * width + d] + 1;
                }
            }
        }
        RunTable { n, up, down }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn up(&self, i: usize, d: usize) -> u32 {
        self.get(&self.up, i, d)
    }

    pub fn down(&self, i: usize, d: usize) -> u32 {
        self.get(&self.down, i, d)
    }

    pub fn run(&self, direction: Direction, i: usize, d: usize) -> u32 {
        match direction {
            Direction::Up => self.up(i, d),
            Direction::Down => self.down(i, d),
        }
    }

    fn get(&self, table: &[u32], i: usize, d: usize) -> u32 {
        assert!(i >= 1 && i <= self.n, "position {i} outside 1..={}", self.n);
        assert!(d >= 1, "difference must be positive");
        if d >= i {
            return 1;
        }
        table[(i - 1) * self.n + d]
    }

    /// Longest increasing arithmetic run over all positions and differences.
    pub fn max_up(&self) -> u32 {
        self.max_of(&self.up)
    }

    pub fn max_down(&self) -> u32 {
        self.max_of(&self.down)
    }

    fn max_of(&self, table: &[u32]) -> u32 {
        if self.n == 0 {
            0
        } else {
            table.iter().copied().max().unwrap_or(1)
        }
    }

    /// Whether appending `x` on the right (existing values `>= x` bumped)
    /// keeps the permutation free of `12...k` and `l...21`.
    ///
    /// Comparisons between old elements are unchanged by the bump, so only
    /// runs ending at the new position need checking, each extending the
    /// stored run at `n + 1 - d`.
    pub fn right_extension_is_anti_monotone(&self, p: &Permutation, x: u32, k: usize, l: usize) -> bool {
        let n = self.n;
        for d in 1..=n {
            let j = n + 1 - d;
            let prev = p.at(j);
            if prev < x {
                if self.up(j, d) as usize + 1 >= k {
                    return false;
                }
            } else if self.down(j, d) as usize + 1 >= l {
                return false;
            }
        }
        true
    }
}

/// Every arithmetic occurrence of length exactly `m` in the given direction,
/// sorted by `(start, diff)`. For `m == 1` each position is reported once
/// with difference 1.
pub fn arithmetic_occurrences(p: &Permutation, direction: Direction, m: usize) -> Vec<Occurrence> {
    assert!(m >= 1, "occurrence length must be positive");
    let n = p.len();
    if m == 1 {
        return (1..=n)
            .map(|start| Occurrence { start, diff: 1, len: 1, direction })
            .collect();
    }
    let table = RunTable::build(p);
    let mut out = Vec::new();
    for start in 1..=n {
        for diff in 1..n {
            let end = start + (m - 1) * diff;
            if end > n {
                break;
            }
            if table.run(direction, end, diff) as usize >= m {
                out.push(Occurrence { start, diff, len: m, direction });
            }
        }
    }
    out
}

/// First occurrence (in `(start, diff)` order) of `12...k` or `l...21`.
pub fn first_violation(p: &Permutation, k: usize, l: usize) -> Option<Occurrence> {
    let ups = arithmetic_occurrences(p, Direction::Up, k);
    let downs = arithmetic_occurrences(p, Direction::Down, l);
    match (ups.first(), downs.first()) {
        (Some(&u), Some(&d)) => Some(if (u.start, u.diff) <= (d.start, d.diff) { u } else { d }),
        (u, d) => u.or(d).copied(),
    }
}

/// Whether `p` has no arithmetic occurrence of `12...k` nor of `l...21`.
///
/// Streams each residue class of each difference without allocating a
/// table, which keeps long inputs cheap.
pub fn is_anti_monotone(p: &Permutation, k: usize, l: usize) -> bool {
    let v = p.as_slice();
    let n = v.len();
    if k <= 1 || l <= 1 {
        return n == 0;
    }
    let (k, l) = (k as u32, l as u32);
    for d in 1..n {
        for r in 0..d.min(n - d) {
            let (mut up, mut down) = (1u32, 1u32);
            let mut prev = v[r];
            let mut j = r + d;
            while j < n {
                let cur = v[j];
                if prev < cur {
                    up += 1;
                    down = 1;
                    if up >= k {
                        return false;
                    }
                } else {
                    down += 1;
                    up = 1;
                    if down >= l {
                        return false;
                    }
                }
                prev = cur;
                j += d;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn increasing_run() {
        let t = RunTable::build(&p("12345"));
        assert_eq!(t.up(5, 1), 5);
        assert_eq!(t.up(5, 2), 3);
        assert_eq!(t.down(5, 1), 1);
        assert_eq!(t.up(2, 4), 1);
    }

    #[test]
    fn crucial_example_runs() {
        let t = RunTable::build(&p("216453"));
        assert_eq!(t.max_up(), 2);
        assert_eq!(t.max_down(), 2);
    }

    #[test]
    fn difference_two_run() {
        // positions 1,3,5 hold 2,1,5: the run ending at 5 is 1 < 5 only.
        let t = RunTable::build(&p("24135"));
        assert_eq!(t.up(5, 2), 2);
        assert_eq!(t.down(3, 2), 2);
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(
            arithmetic_occurrences(&p("123"), Direction::Up, 3),
            vec![Occurrence { start: 1, diff: 1, len: 3, direction: Direction::Up }]
        );
        assert!(arithmetic_occurrences(&p("216453"), Direction::Up, 3).is_empty());
        assert!(arithmetic_occurrences(&p("216453"), Direction::Down, 3).is_empty());
        assert!(arithmetic_occurrences(&p("73418562"), Direction::Down, 3).is_empty());
        assert_eq!(arithmetic_occurrences(&p("21"), Direction::Down, 1).len(), 2);
    }

    #[test]
    fn anti_monotone_examples() {
        assert!(is_anti_monotone(&p("216453"), 3, 3));
        assert!(!is_anti_monotone(&p("123"), 3, 3));
        assert!(is_anti_monotone(&p("1"), 2, 2));
        assert!(!is_anti_monotone(&p("12"), 2, 5));
    }

    #[test]
    fn first_violation_prefers_earliest() {
        let v = first_violation(&p("123"), 3, 3).unwrap();
        assert_eq!((v.start, v.diff, v.direction), (1, 1, Direction::Up));
        assert_eq!(first_violation(&p("216453"), 3, 3), None);
        let v = first_violation(&p("4321"), 3, 3).unwrap();
        assert_eq!((v.start, v.diff, v.direction), (1, 1, Direction::Down));
    }

    #[test]
    fn extension_check_matches_rebuild() {
        let q = p("216453");
        let t = RunTable::build(&q);
        for x in 1..=7 {
            let ext = q.extend_right(x).unwrap();
            assert_eq!(
                t.right_extension_is_anti_monotone(&q, x, 3, 3),
                is_anti_monotone(&ext, 3, 3),
                "x = {x}"
            );
        }
    }
}
