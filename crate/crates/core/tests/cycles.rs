mod common;

use std::collections::BTreeSet;

use common::{brute_force_cycles, random_base, random_lifting, rng};
use nbqc::{greedy_lift, AceValue, BaseMatrix, ConstructionConfig, FieldSpec};

#[test]
fn all_cycles_matches_brute_force() {
    let mut r = rng(8);
    for t in 0..30 {
        let base = random_base(&mut r, 3 + t % 3, 4 + t % 4, 0.55);
        let expected = brute_force_cycles(&base, 8);
        let got: BTreeSet<_> = base.all_cycles(8, None).cycles.into_iter().collect();
        assert_eq!(got, expected, "{base}");
        assert!(got.iter().all(|c| c.is_valid_in(&base)));
    }
}

#[test]
fn all_ones_counts() {
    // 4-cycles: 2 of 3 rows times 2 of 4 columns. 6-cycles: all 3 rows,
    // 3 of 4 columns, and K(3,3) has 3!*2!/2 = 6 Hamiltonian cycles.
    let base = BaseMatrix::from_rows(&vec![vec![1; 4]; 3]).unwrap();
    let cycles = base.all_cycles(6, None).cycles;
    let fours = cycles.iter().filter(|c| c.len() == 4).count();
    let sixes = cycles.iter().filter(|c| c.len() == 6).count();
    assert_eq!(fours, 3 * 6);
    assert_eq!(sixes, 4 * 6);
}

/// A finite e4 means some base 4-cycle survives the lifting; with monomial
/// blocks that survivor shows up as a length-4 cycle in the scalar graph.
#[test]
fn finite_e4_implies_expanded_girth_four() {
    let mut r = rng(21);
    let mut seen_finite = 0;
    for t in 0..60 {
        let base = random_base(&mut r, 3, 5, 0.7);
        let f = FieldSpec::new(1 + (t % 2) as u32).unwrap();
        let l = random_lifting(&mut r, base, 2 + t % 3, f);
        let cycles = l.base().all_cycles(4, None).cycles;
        let ace = l.ace_vector(&cycles, 4).unwrap();
        if ace.get(4) != Some(AceValue::Infinite) {
            seen_finite += 1;
            assert_eq!(l.tanner_graph().girth(), Some(4));
        }
    }
    assert!(seen_finite > 5);
}

#[test]
fn accepted_ace_sequence_is_non_decreasing() {
    let base: BaseMatrix = include_str!("../data/base_3x6.txt").parse().unwrap();
    for seed in 0..5 {
        let mut cfg = ConstructionConfig::new(7, 4, 8, seed);
        cfg.trials_per_edge = 20;
        let (_, report) = greedy_lift(&base, &cfg).unwrap();
        for w in report.accepted.windows(2) {
            assert!(w[0].ace.lex_compare(&w[1].ace).unwrap().is_le());
        }
        assert!(report
            .final_ace
            .lex_compare(&report.initial_ace)
            .unwrap()
            .is_ge());
    }
}
