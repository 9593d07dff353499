mod common;

use common::{game, melody, small_rational};
use num::integer::Integer;
use num::{Signed, Zero};
use proptest::prelude::*;
use unfolding_core::automata::MooreMachine;
use unfolding_core::counterpoint::{
    bundle_folding, count_heterogeneous_bundles, max_unfolding_deviation, unfolding_deviation_gain, unfolding_payoff,
};
use unfolding_core::flexible::{flexible_deviation_gain, mp_tactic_floor, tactic_report};
use unfolding_core::melody::{apportion, simple_melody, stage_profile};
use unfolding_core::rational::{int, ratio};
use unfolding_core::schedule::{classify, gcd_ratio, Schedule, Verdict};
use unfolding_core::{MixedProfile, MixedStrategy, NormalFormGame, PeriodicProfile, Player, Rational};

fn mixed(k: usize) -> impl Strategy<Value = MixedStrategy> {
    prop::collection::vec(0usize..5, k)
        .prop_filter("some weight", |w| w.iter().any(|&x| x > 0))
        .prop_map(|w| MixedStrategy::from_counts(&w))
}

fn scaled(g: &NormalFormGame, c: &Rational, shift: &Rational) -> NormalFormGame {
    let t = |p: Player| g.table(p).iter().map(|r| r.iter().map(|v| v * c + shift).collect()).collect();
    NormalFormGame::new(
        g.actions(Player::One).to_vec(),
        g.actions(Player::Two).to_vec(),
        t(Player::One),
        t(Player::Two),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expected_payoff_is_bilinear(
        g in game(3),
        a in mixed(3), b in mixed(3), c in mixed(3), w in 0i64..=4,
    ) {
        let (r, k) = (g.num_actions(Player::One), g.num_actions(Player::Two));
        let trim = |s: &MixedStrategy, n: usize| {
            let counts: Vec<usize> = (0..n).map(|i| if i < s.len() { (s.weight(i) * int(60)).to_integer().try_into().unwrap() } else { 0 }).collect();
            if counts.iter().all(|&x| x == 0) { MixedStrategy::pure(n, 0) } else { MixedStrategy::from_counts(&counts) }
        };
        let (x1, x2, y) = (trim(&a, r), trim(&b, r), trim(&c, k));
        let lam = ratio(w, 4);
        let mix: Vec<Rational> = x1.weights().iter().zip(x2.weights()).map(|(p, q)| &lam * p + (int(1) - &lam) * q).collect();
        let mix = MixedStrategy::new(mix).unwrap();
        let u = |x: &MixedStrategy| g.expected_payoff(&MixedProfile::new(x.clone(), y.clone())).unwrap();
        let (m1, m2) = u(&mix);
        let (p1, p2) = u(&x1);
        let (q1, q2) = u(&x2);
        prop_assert_eq!(m1, &lam * p1 + (int(1) - &lam) * q1);
        prop_assert_eq!(m2, &lam * p2 + (int(1) - &lam) * q2);
    }

    #[test]
    fn deviation_scales_with_positive_affine_maps(
        g in game(3), c in (1i64..=5, 1i64..=3), shift in small_rational(), seed in 0usize..1000,
    ) {
        let c = ratio(c.0, c.1);
        let h = scaled(&g, &c, &shift);
        let r = g.num_actions(Player::One);
        let k = g.num_actions(Player::Two);
        let p = MixedProfile::new(MixedStrategy::pure(r, seed % r), MixedStrategy::from_counts(&(0..k).map(|i| (seed + i) % 3).map(|v| v + 1).collect::<Vec<_>>()));
        let d = g.max_deviation(&p).unwrap();
        prop_assert!(!d.is_negative());
        prop_assert_eq!(h.max_deviation(&p).unwrap(), d * c);
    }

    #[test]
    fn matching_pennies_payoffs_sum_to_one(m1 in melody(2, 7), m2 in melody(2, 5)) {
        let g = NormalFormGame::matching_pennies();
        let p = PeriodicProfile::from_melodies(&g, m1, m2).unwrap();
        let (u1, u2) = unfolding_payoff(&p);
        prop_assert_eq!(u1 + u2, int(1));
    }

    #[test]
    fn coprime_periods_collapse_to_the_folding(g in game(4), t1 in 1usize..=10, t2 in 1usize..=10, seed in any::<u64>()) {
        prop_assume!(t1.gcd(&t2) == 1);
        let (a1, a2) = (g.num_actions(Player::One), g.num_actions(Player::Two));
        let notes = |len: usize, k: usize, s: u64| (0..len).map(|i| ((s >> (i % 60)) as usize + i * 7) % k).collect::<Vec<_>>();
        let m1 = unfolding_core::Melody::new(notes(t1, a1, seed)).unwrap();
        let m2 = unfolding_core::Melody::new(notes(t2, a2, seed.rotate_left(17))).unwrap();
        let p = PeriodicProfile::from_melodies(&g, m1, m2).unwrap();
        let fold = p.fold();
        prop_assert_eq!(unfolding_payoff(&p), g.expected_payoff(&fold).unwrap());
        prop_assert_eq!(max_unfolding_deviation(&p), g.max_deviation(&fold).unwrap());
    }

    #[test]
    fn bundle_components_are_multiples_of_the_resolution(m1 in melody(3, 8), m2 in melody(2, 6)) {
        let g = NormalFormGame::new(common::names("a", 3), common::names("b", 2), vec![vec![int(0); 2]; 3], vec![vec![int(0); 2]; 3]).unwrap();
        let p = PeriodicProfile::from_melodies(&g, m1, m2).unwrap();
        let bf = bundle_folding(&p);
        for player in Player::BOTH {
            let resolution = Rational::new(bf.rho.into(), p.period(player).into());
            for mu in &bf.bundle_profiles {
                for w in mu.get(player).weights().iter().filter(|w| w.is_positive()) {
                    prop_assert!((w / &resolution).is_integer());
                }
            }
        }
    }

    #[test]
    fn apportion_and_simple_melody(s in mixed(4), tau in 4usize..200) {
        let ap = apportion(&s, tau).unwrap();
        prop_assert_eq!(ap.counts.iter().sum::<usize>(), tau);
        let r = s.support().len() as i64;
        for (a, &c) in ap.counts.iter().enumerate() {
            if s.weight(a).is_zero() { prop_assert_eq!(c, 0); }
            let err = (Rational::new(c.into(), tau.into()) - s.weight(a)).abs();
            prop_assert!(err <= ratio(r, tau as i64));
        }
        let m = simple_melody(&s, tau).unwrap();
        prop_assert!(m.fold(4).distance(&s) <= ratio(r, tau as i64));
        prop_assert!(m.notes().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn heterogeneous_bundles_stay_below_support_size(s in mixed(3), tau in 6usize..=300, rho_pick in 0usize..50) {
        let m = simple_melody(&s, tau).unwrap();
        let r = s.support().len();
        let rhos: Vec<usize> = (1..=tau).filter(|d| tau % d == 0 && tau / d >= 3 * r).collect();
        prop_assume!(!rhos.is_empty());
        let rho = rhos[rho_pick % rhos.len()];
        let c = count_heterogeneous_bundles(&m, rho, 3).unwrap();
        prop_assert!(c.heterogeneous < r.max(1));
    }

    #[test]
    fn bundle_distance_proxy(n in 3u64..120, p in 1i64..4, q in 1i64..4) {
        let g = NormalFormGame::matching_pennies();
        let half = MixedStrategy::new(vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        let sigma = MixedProfile::new(half.clone(), half);
        let (t1, t2) = ((p as u64 * n) as usize, (q as u64 * n + 1) as usize);
        let prof = stage_profile(&g, &sigma, t1, t2).unwrap();
        let rho = t1.gcd(&t2);
        let r = 2i64;
        let bound = Rational::new((r * rho as i64).into(), (t1 as i64).into())
            + Rational::new((r * rho as i64).into(), (t2 as i64).into())
            + ratio(r, t1.min(t2) as i64);
        prop_assert!(bundle_folding(&prof).max_distance(&sigma) <= bound);
    }

    #[test]
    fn gcd_ratio_range(a in 1u64..50, b in 1u64..50) {
        let s1 = Schedule::explicit(vec![a]).unwrap();
        let s2 = Schedule::explicit(vec![b]).unwrap();
        let r = gcd_ratio(&s1, &s2, 1).unwrap();
        prop_assert!(r.is_positive() && r <= int(1));
        prop_assert_eq!(r == int(1), a.max(b) % a.min(b) == 0);
    }

    #[test]
    fn affine_limsup_matches_late_values(a1 in 0u64..5, b1 in 1i64..8, a2 in 0u64..5, b2 in 1i64..8) {
        let (s1, s2) = (Schedule::affine(a1, b1).unwrap(), Schedule::affine(a2, b2).unwrap());
        let c = classify(&s1, &s2);
        let limsup = c.limsup_gcd_ratio.clone().unwrap();
        // late values never exceed the limsup by more than a vanishing amount, and it is
        // approached within one period of the gcd pattern
        let window: Vec<Rational> = (5000..5000 + 64).map(|n| gcd_ratio(&s1, &s2, n).unwrap()).collect();
        let max = window.iter().max().unwrap().clone();
        if limsup.is_zero() {
            prop_assert!(max <= ratio(64, 5000));
        } else {
            prop_assert_eq!(max, limsup);
        }
        if a1 >= 1 && a2 >= 1 && a1 == a2 {
            prop_assert_eq!(c.almost_identical, Verdict::Yes);
            prop_assert_eq!(c.almost_coprime, c.eventually_distinct);
        }
    }

    #[test]
    fn flexible_is_monotone_and_dominates_fixed(m1 in melody(2, 5), m2 in melody(2, 5)) {
        let g = NormalFormGame::matching_pennies();
        let p = PeriodicProfile::from_melodies(&g, m1, m2).unwrap();
        for player in Player::BOTH {
            let t = p.period(player);
            let mut prev = unfolding_deviation_gain(&p, player);
            for bound in t..t + 4 {
                let (gain, best) = flexible_deviation_gain(&p, player, bound).unwrap();
                prop_assert!(gain >= prev);
                prop_assert!(best <= bound);
                prev = gain;
            }
        }
    }

    #[test]
    fn tactics_certify_the_flexible_floor(m1 in melody(2, 6), m2 in melody(2, 6)) {
        let g = NormalFormGame::matching_pennies();
        let p = PeriodicProfile::from_melodies(&g, m1, m2).unwrap();
        let rep = tactic_report(&p).unwrap();
        prop_assert!(rep.gain >= ratio(1, 3));
        let (g_dev, _) = flexible_deviation_gain(&p, rep.deviator, p.period(rep.deviator).max(rep.melody.period())).unwrap();
        prop_assert!(g_dev >= rep.gain);
        let longer = if p.period(Player::Two) >= p.period(Player::One) { Player::Two } else { Player::One };
        let (u1, u2) = unfolding_payoff(&p);
        let u = if longer == Player::One { u1 } else { u2 };
        prop_assert!(rep.gain >= mp_tactic_floor(&u));
    }

    #[test]
    fn moore_detection_reproduces_the_stream(next in prop::collection::vec(0usize..40, 1..40), start in 0usize..40, seed in any::<u64>()) {
        let n = next.len();
        let next: Vec<usize> = next.into_iter().map(|t| t % n).collect();
        let output: Vec<String> = (0..n).map(|i| if (seed >> (i % 64)) & 1 == 1 { "H".into() } else { "T".into() }).collect();
        let m = MooreMachine::indexed(start % n, next, output).unwrap();
        let ep = m.run(n + 1).unwrap();
        prop_assert!(ep.len() <= n);
        prop_assert!(!ep.period.is_empty());
        prop_assert_eq!(ep.stream(5 * n), m.simulate(5 * n));
        prop_assert_eq!(m.run(n + 1).unwrap(), ep);
    }
}
