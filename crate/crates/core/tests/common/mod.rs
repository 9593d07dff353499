#![allow(dead_code)]

use num::integer::Integer;
use num::Zero;
use proptest::prelude::*;
use unfolding_core::rational::ratio;
use unfolding_core::{Melody, NormalFormGame, Rational};

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Rational with numerator in `-6..=6` and denominator in `1..=4`.
pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| ratio(p, q))
}

pub fn table(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(small_rational(), cols), rows)
}

/// Random game with up to `max` actions per player.
pub fn game(max: usize) -> impl Strategy<Value = NormalFormGame> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        (table(r, c), table(r, c)).prop_map(move |(t1, t2)| {
            NormalFormGame::new(names("r", r), names("c", c), t1, t2).expect("well-formed")
        })
    })
}

pub fn melody(num_actions: usize, len: usize) -> impl Strategy<Value = Melody> {
    prop::collection::vec(0..num_actions, len).prop_map(|n| Melody::new(n).expect("non-empty"))
}

/// Long-run payoff of the row player's and column player's melodies,
/// computed by stepping through `lcm` rounds.
pub fn walk(game: &NormalFormGame, m1: &[usize], m2: &[usize]) -> (Rational, Rational) {
    use unfolding_core::Player::{One, Two};
    let len = m1.len().lcm(&m2.len());
    let (mut u1, mut u2) = (Rational::zero(), Rational::zero());
    for t in 0..len {
        let (a, b) = (m1[t % m1.len()], m2[t % m2.len()]);
        u1 += game.payoff(One, a, b);
        u2 += game.payoff(Two, a, b);
    }
    let len = Rational::from_integer(len.into());
    (u1 / &len, u2 / len)
}

/// All note sequences of length `len` over `k` actions.
pub fn sequences(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                (0..k).map(move |a| {
                    let mut t = s.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Best payoff of `player` over every melody whose length is in `lens`,
/// against the opponent's fixed melody.
pub fn brute_best(game: &NormalFormGame, player: usize, opp: &[usize], lens: impl Iterator<Item = usize>) -> Rational {
    use unfolding_core::Player::{One, Two};
    let k = game.num_actions(if player == 1 { One } else { Two });
    let mut best: Option<Rational> = None;
    for len in lens {
        for own in sequences(k, len) {
            let v = if player == 1 { walk(game, &own, opp).0 } else { walk(game, opp, &own).1 };
            if best.as_ref().is_none_or(|b| &v > b) {
                best = Some(v);
            }
        }
    }
    best.expect("at least one melody")
}
