//! Exhaustive scans over all melody pairs of given periods.

use crate::counterpoint::max_unfolding_deviation;
use crate::error::{Error, Result};
use crate::exec;
use crate::flexible::{flexible_deviation_gain, tactic_report, TacticReport};
use crate::game::{NormalFormGame, Player};
use crate::rational::Rational;
use crate::sequence::{all_melodies, Melody, PeriodicProfile};

/// Largest number of profiles a scan will enumerate.
pub const DEFAULT_SCAN_LIMIT: u128 = 5_000_000;

fn count(num_actions: usize, len: usize) -> u128 {
    (num_actions as u128).checked_pow(len as u32).unwrap_or(u128::MAX)
}

/// Every pair of melodies with periods exactly `(tau1, tau2)`, in
/// lexicographic order.
pub fn melody_pairs(game: &NormalFormGame, tau1: usize, tau2: usize, limit: u128) -> Result<Vec<(Melody, Melody)>> {
    let (a1, a2) = (game.num_actions(Player::One), game.num_actions(Player::Two));
    let size = count(a1, tau1).saturating_mul(count(a2, tau2));
    if size > limit {
        return Err(Error::LimitExceeded { what: "melody pairs", size, limit });
    }
    let second: Vec<Melody> = all_melodies(a2, tau2).collect();
    Ok(all_melodies(a1, tau1).flat_map(|m1| second.iter().map(move |m2| (m1.clone(), m2.clone()))).collect())
}

/// Applies `f` to every pair, in parallel when enabled; output order
/// follows the input.
pub fn scan_pairs<R, F>(game: &NormalFormGame, pairs: Vec<(Melody, Melody)>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&PeriodicProfile<'_>) -> R + Sync + Send,
{
    exec::par_map(pairs, |(m1, m2)| {
        let p = PeriodicProfile::from_melodies(game, m1, m2).expect("enumerated melodies fit the game");
        f(&p)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanMinimum {
    pub value: Rational,
    /// First minimizing pair in lexicographic order.
    pub argmin: (Melody, Melody),
    pub profiles: usize,
}

fn first_min(pairs: &[(Melody, Melody)], values: Vec<Rational>) -> ScanMinimum {
    let profiles = values.len();
    let (i, value) = values
        .into_iter()
        .enumerate()
        .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
        .expect("at least one profile");
    ScanMinimum { value, argmin: pairs[i].clone(), profiles }
}

/// Smallest `max_unfolding_deviation` over all pairs of periods `(tau1, tau2)`.
pub fn min_fixed_deviation(game: &NormalFormGame, tau1: usize, tau2: usize, limit: u128) -> Result<ScanMinimum> {
    let pairs = melody_pairs(game, tau1, tau2, limit)?;
    let values = scan_pairs(game, pairs.clone(), max_unfolding_deviation);
    Ok(first_min(&pairs, values))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlexibleRow {
    pub m1: Melody,
    pub m2: Melody,
    pub epsilon: Rational,
    /// Player with the largest flexible gain (player 1 on ties) and the
    /// period achieving it.
    pub deviator: Player,
    pub best_period: usize,
    pub tactic: Option<TacticReport>,
}

/// Flexible epsilon of every profile with both periods in `1..=cap`, each
/// player bounded by its own current period.
pub fn flexible_scan(game: &NormalFormGame, cap: usize, limit: u128) -> Result<Vec<FlexibleRow>> {
    let (a1, a2) = (game.num_actions(Player::One), game.num_actions(Player::Two));
    let per_player = |a: usize| (1..=cap).map(|t| count(a, t)).fold(0u128, u128::saturating_add);
    let size = per_player(a1).saturating_mul(per_player(a2));
    if size > limit {
        return Err(Error::LimitExceeded { what: "flexible profiles", size, limit });
    }
    let mut pairs = Vec::new();
    for t1 in 1..=cap {
        for t2 in 1..=cap {
            pairs.extend(melody_pairs(game, t1, t2, limit)?);
        }
    }
    let two_by_two = game.is_two_by_two();
    let rows = scan_pairs(game, pairs, |p| {
        let (g1, p1) = flexible_deviation_gain(p, Player::One, p.period(Player::One)).expect("bound is the period");
        let (g2, p2) = flexible_deviation_gain(p, Player::Two, p.period(Player::Two)).expect("bound is the period");
        let (epsilon, deviator, best_period) = if g2 > g1 { (g2, Player::Two, p2) } else { (g1, Player::One, p1) };
        FlexibleRow {
            m1: p.melody(Player::One).clone(),
            m2: p.melody(Player::Two).clone(),
            epsilon,
            deviator,
            best_period,
            tactic: two_by_two.then(|| tactic_report(p).expect("two-action game")),
        }
    });
    Ok(rows)
}
