mod common;

use common::{brute_best, game, melody, sequences, walk};
use num::{Signed, Zero};
use proptest::prelude::*;
use unfolding_core::counterpoint::{
    best_deviation_melody, max_unfolding_deviation, unfolding_deviation_gain, unfolding_payoff,
};
use unfolding_core::flexible::flexible_deviation_gain;
use unfolding_core::game::{epsilon0_estimate, solve_ne};
use unfolding_core::rational::{int, ratio};
use unfolding_core::{Melody, MixedProfile, MixedStrategy, NormalFormGame, PeriodicProfile, Player, Rational};

fn profile_in(max_actions: usize, max_period: usize) -> impl Strategy<Value = (NormalFormGame, Melody, Melody)> {
    (game(max_actions), 1..=max_period, 1..=max_period).prop_flat_map(|(g, t1, t2)| {
        let (a1, a2) = (g.num_actions(Player::One), g.num_actions(Player::Two));
        (Just(g), melody(a1, t1), melody(a2, t2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bundle_payoff_matches_round_by_round((g, m1, m2) in profile_in(3, 9)) {
        let p = PeriodicProfile::from_melodies(&g, m1.clone(), m2.clone()).unwrap();
        prop_assert_eq!(unfolding_payoff(&p), walk(&g, m1.notes(), m2.notes()));
    }

    #[test]
    fn deviation_gain_matches_enumeration((g, m1, m2) in profile_in(3, 4)) {
        let p = PeriodicProfile::from_melodies(&g, m1.clone(), m2.clone()).unwrap();
        let (u1, u2) = walk(&g, m1.notes(), m2.notes());
        let b1 = brute_best(&g, 1, m2.notes(), std::iter::once(m1.period()));
        let b2 = brute_best(&g, 2, m1.notes(), std::iter::once(m2.period()));
        prop_assert_eq!(unfolding_deviation_gain(&p, Player::One), &b1 - &u1);
        prop_assert_eq!(unfolding_deviation_gain(&p, Player::Two), &b2 - &u2);
        prop_assert_eq!(max_unfolding_deviation(&p), (b1 - u1).max(b2 - u2));
    }

    #[test]
    fn best_deviation_melody_attains_the_gain((g, m1, m2) in profile_in(4, 6)) {
        let p = PeriodicProfile::from_melodies(&g, m1, m2).unwrap();
        for player in Player::BOTH {
            let dev = best_deviation_melody(&p, player);
            prop_assert_eq!(dev.period(), p.period(player));
            let q = p.with_melody(player, dev).unwrap();
            let before = unfolding_payoff(&p);
            let after = unfolding_payoff(&q);
            let gain = match player {
                Player::One => after.0 - before.0,
                Player::Two => after.1 - before.1,
            };
            prop_assert_eq!(gain, unfolding_deviation_gain(&p, player));
        }
    }

    #[test]
    fn flexible_gain_matches_enumeration(
        (g, m1, m2) in profile_in(3, 4),
        extra in 0usize..2,
    ) {
        let p = PeriodicProfile::from_melodies(&g, m1.clone(), m2.clone()).unwrap();
        let (u1, u2) = walk(&g, m1.notes(), m2.notes());
        let t1 = m1.period() + extra;
        let t2 = m2.period() + extra;
        let (g1, p1) = flexible_deviation_gain(&p, Player::One, t1).unwrap();
        let (g2, p2) = flexible_deviation_gain(&p, Player::Two, t2).unwrap();
        prop_assert_eq!(&g1, &(brute_best(&g, 1, m2.notes(), 1..=t1) - &u1));
        prop_assert_eq!(&g2, &(brute_best(&g, 2, m1.notes(), 1..=t2) - &u2));
        // the reported period attains the gain and no shorter one does
        prop_assert_eq!(&g1, &(brute_best(&g, 1, m2.notes(), p1..=p1) - &u1));
        if p1 > 1 {
            prop_assert!(brute_best(&g, 1, m2.notes(), 1..p1) - &u1 < g1);
        }
        prop_assert_eq!(&g2, &(brute_best(&g, 2, m1.notes(), p2..=p2) - &u2));
    }
}

#[test]
fn matching_pennies_deviation_exhaustive_small() {
    let g = NormalFormGame::matching_pennies();
    for t1 in 1..=4 {
        for t2 in 1..=4 {
            for m1 in sequences(2, t1) {
                for m2 in sequences(2, t2) {
                    let p = PeriodicProfile::from_melodies(&g, Melody::new(m1.clone()).unwrap(), Melody::new(m2.clone()).unwrap())
                        .unwrap();
                    let (u1, u2) = walk(&g, &m1, &m2);
                    let b1 = brute_best(&g, 1, &m2, t1..=t1);
                    let b2 = brute_best(&g, 2, &m1, t2..=t2);
                    assert_eq!(max_unfolding_deviation(&p), (b1 - u1).max(b2 - u2), "{p}");
                }
            }
        }
    }
}

// f1 and f2 of G_delta at (x, y), written out by hand.
fn gdelta_gap(delta: &Rational, x: &Rational, y: &Rational) -> Rational {
    let pos = |r: Rational| if r.is_positive() { r } else { Rational::zero() };
    let f1 = (int(1) - x) * pos(y - delta) + x * pos(delta - y);
    let f2 = (int(1) - y) * pos(delta - x) + y * pos(x - delta);
    f1.max(f2)
}

#[test]
fn gdelta_gap_formula_agrees_with_the_game() {
    let delta = ratio(1, 4);
    let g = NormalFormGame::modified_matching_pennies(&delta).unwrap();
    for i in 0..=8 {
        for j in 0..=8 {
            let (x, y) = (ratio(i, 8), ratio(j, 8));
            let p = MixedProfile::new(
                MixedStrategy::new(vec![x.clone(), int(1) - &x]).unwrap(),
                MixedStrategy::new(vec![y.clone(), int(1) - &y]).unwrap(),
            );
            assert_eq!(g.max_deviation(&p).unwrap(), gdelta_gap(&delta, &x, &y));
        }
    }
}

#[test]
fn epsilon0_is_the_grid_minimum_up_to_resolution() {
    const STEPS: i64 = 60;
    for delta in [ratio(1, 4), ratio(1, 5), ratio(1, 3), ratio(2, 5)] {
        for eps in [ratio(1, 20), ratio(1, 10), ratio(1, 5)] {
            let est = epsilon0_estimate(&delta, &eps).unwrap();
            let mut grid_min: Option<Rational> = None;
            for i in 0..=STEPS {
                for j in 0..=STEPS {
                    let (x, y) = (ratio(i, STEPS), ratio(j, STEPS));
                    if (&x - &delta).abs().max((&y - &delta).abs()) < eps {
                        continue;
                    }
                    let f = gdelta_gap(&delta, &x, &y);
                    assert!(f >= est, "delta {delta} eps {eps}: f({x}, {y}) = {f} < {est}");
                    if grid_min.as_ref().is_none_or(|m| &f < m) {
                        grid_min = Some(f);
                    }
                }
            }
            // gains are 2-Lipschitz per coordinate in the sup norm
            let slack = ratio(4, STEPS);
            assert!(grid_min.unwrap() <= &est + slack, "delta {delta} eps {eps}");
        }
    }
}

#[test]
fn solver_finds_the_two_by_two_mixed_equilibrium() {
    // U = [[a, b], [c, d]] for each player; interior equilibrium by indifference
    let cases = [
        ([[3, 0], [0, 1]], [[1, 0], [0, 3]]),
        ([[2, -1], [-1, 1]], [[-2, 1], [1, -1]]),
        ([[0, 5], [2, 1]], [[4, 0], [1, 2]]),
    ];
    for (u1, u2) in cases {
        let t = |m: [[i64; 2]; 2]| m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        let g = NormalFormGame::new(common::names("r", 2), common::names("c", 2), t(u1), t(u2)).unwrap();
        // player 2 mixes y to make player 1 indifferent, and vice versa
        let y = ratio(u1[1][1] - u1[0][1], u1[0][0] - u1[0][1] - u1[1][0] + u1[1][1]);
        let x = ratio(u2[1][1] - u2[1][0], u2[0][0] - u2[1][0] - u2[0][1] + u2[1][1]);
        let expected = MixedProfile::new(
            MixedStrategy::new(vec![x.clone(), int(1) - x]).unwrap(),
            MixedStrategy::new(vec![y.clone(), int(1) - y]).unwrap(),
        );
        let found = solve_ne(&g).unwrap();
        assert!(found.contains(&expected), "{found:?} lacks {expected}");
        for p in &found {
            assert!(g.max_deviation(p).unwrap().is_zero());
        }
    }
}
