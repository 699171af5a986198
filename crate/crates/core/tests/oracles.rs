mod common;

use apcrucial::crucial::right_survivors_naive;
use apcrucial::search::{enumerate_anti_monotone, SearchBudget};
use apcrucial::{
    arithmetic_occurrences, is_anti_monotone, is_bicrucial, is_crucial_fast, is_crucial_naive,
    is_left_crucial, witness_sets, Direction, Permutation, RunTable,
};
use proptest::prelude::*;
use rayon::prelude::*;
use std::ops::ControlFlow;

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Vec<u32>> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn run_table_matches_walk(v in perm_strategy(12)) {
        let p = Permutation::new(v.clone()).unwrap();
        let t = RunTable::build(&p);
        for i in 1..=v.len() {
            for d in 1..v.len() {
                prop_assert_eq!(t.up(i, d), common::run_ending(&v, i, d, true));
                prop_assert_eq!(t.down(i, d), common::run_ending(&v, i, d, false));
            }
        }
    }

    #[test]
    fn occurrences_match_brute_force(v in perm_strategy(12), m in 1usize..6) {
        let p = Permutation::new(v.clone()).unwrap();
        for (dir, up) in [(Direction::Up, true), (Direction::Down, false)] {
            let got: Vec<_> = arithmetic_occurrences(&p, dir, m).iter().map(|o| (o.start, o.diff)).collect();
            prop_assert_eq!(got, common::occurrences(&v, m, up));
        }
    }

    #[test]
    fn anti_monotone_matches_brute_force(v in perm_strategy(12), k in 2usize..6, l in 2usize..6) {
        let p = Permutation::new(v.clone()).unwrap();
        prop_assert_eq!(is_anti_monotone(&p, k, l), common::anti(&v, k, l));
    }
}

#[test]
fn crucial_tests_agree_on_every_anti_monotone_permutation_up_to_9() {
    let pairs: Vec<(usize, usize)> = (3..=5).flat_map(|k| (3..=5).map(move |l| (k, l))).collect();
    let checked: usize = pairs
        .par_iter()
        .map(|&(k, l)| {
            let mut checked = 0;
            for n in 1..=9 {
                for v in common::all_perms(n) {
                    if !common::anti(&v, k, l) {
                        continue;
                    }
                    let p = Permutation::new(v.clone()).unwrap();
                    let truth = common::crucial(&v, k, l);
                    assert_eq!(is_crucial_fast(&p, k, l), truth, "fast ({k},{l}) {p}");
                    assert_eq!(is_crucial_naive(&p, k, l), truth, "naive ({k},{l}) {p}");
                    checked += 1;
                }
            }
            checked
        })
        .sum();
    assert!(checked > 0);
}

#[test]
fn survivors_form_the_predicted_interval() {
    for n in 1..=8 {
        for v in common::all_perms(n) {
            if !common::anti(&v, 3, 4) {
                continue;
            }
            let p = Permutation::new(v.clone()).unwrap();
            let w = witness_sets(&p, 3, 4).unwrap();
            let predicted: Vec<u32> = w.surviving_extensions(n).collect();
            let brute: Vec<u32> = (1..=n as u32 + 1)
                .filter(|&x| common::anti(&common::extend(&v, x, true), 3, 4))
                .collect();
            assert_eq!(predicted, brute, "{p}");
            assert_eq!(right_survivors_naive(&p, 3, 4).unwrap(), brute);
            if let (Some(a), Some(b)) = (w.a_star, w.b_star) {
                assert_ne!(a, b, "{p}");
            }
        }
    }
}

#[test]
fn left_and_bicrucial_match_brute_force() {
    for (k, l) in [(3, 3), (3, 4), (4, 3)] {
        for n in 1..=8 {
            for v in common::all_perms(n) {
                let p = Permutation::new(v.clone()).unwrap();
                assert_eq!(is_left_crucial(&p, k, l), common::left_crucial(&v, k, l), "({k},{l}) {p}");
                assert_eq!(is_bicrucial(&p, k, l), common::bicrucial(&v, k, l), "({k},{l}) {p}");
            }
        }
    }
}

#[test]
fn pruned_enumeration_matches_filtering_s_n() {
    for (k, l) in [(3, 3), (3, 4), (4, 3), (4, 4), (3, 5), (5, 5)] {
        for n in 0..=8 {
            let mut seen = Vec::new();
            let count = enumerate_anti_monotone(k, l, n, &SearchBudget::default(), |v| {
                seen.push(v.to_vec());
                ControlFlow::Continue(())
            })
            .unwrap();
            let expected: Vec<Vec<u32>> = common::all_perms(n).filter(|v| common::anti(v, k, l)).collect();
            assert_eq!(count as usize, expected.len(), "({k},{l},{n})");
            assert_eq!(seen, expected, "({k},{l},{n}) order or content");
        }
    }
}
