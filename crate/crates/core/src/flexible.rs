//! Deviations that may also change the period, up to a per-player bound.
//!
//! A period-`p` melody against an opponent of period `tau` splits the piece
//! into `rho = gcd(p, tau)` residue classes. Within class `j` each of the
//! player's notes meets the opponent's class-`j` frequencies, so the best
//! period-`p` reply plays a best response to each class and scores the
//! average of the class maxima.

use std::fmt;

use num::integer::Integer;

use crate::counterpoint::{residue_folding, unfolding_payoff};
use crate::error::{Error, Result};
use crate::game::{argmax_all, NormalFormGame, Player};
use crate::rational::{int, ratio, Rational};
use crate::sequence::{Melody, PeriodicProfile};

fn own_payoff(profile: &PeriodicProfile<'_>, player: Player) -> Rational {
    let (u1, u2) = unfolding_payoff(profile);
    match player {
        Player::One => u1,
        Player::Two => u2,
    }
}

/// Best reply of period exactly `p` against the opponent's melody, with its
/// average payoff. Ties go to the earliest action.
pub fn best_reply_of_period(profile: &PeriodicProfile<'_>, player: Player, p: usize) -> (Melody, Rational) {
    assert!(p >= 1);
    let game = profile.game();
    let opp = profile.melody(player.other());
    let rho = p.gcd(&opp.period());
    let classes = residue_folding(opp, rho, game.num_actions(player.other()));
    let mut total = Rational::from_integer(0.into());
    let mut per_class = Vec::with_capacity(rho);
    for mu in &classes {
        let values = game.action_values_unchecked(player, mu.weights());
        let best = argmax_all(&values)[0];
        total += &values[best];
        per_class.push(best);
    }
    let melody = Melody::new((0..p).map(|t| per_class[t % rho]).collect()).expect("p >= 1");
    (melody, total / Rational::from_integer(rho.into()))
}

/// Largest gain over all periods `1..=tau_max`, and the smallest period
/// attaining it.
pub fn flexible_deviation_gain(profile: &PeriodicProfile<'_>, player: Player, tau_max: usize) -> Result<(Rational, usize)> {
    let period = profile.period(player);
    if tau_max < period {
        return Err(Error::InvalidBound { tau_max, period });
    }
    let current = own_payoff(profile, player);
    let mut best: Option<(Rational, usize)> = None;
    for p in 1..=tau_max {
        let (_, value) = best_reply_of_period(profile, player, p);
        if best.as_ref().is_none_or(|(b, _)| &value > b) {
            best = Some((value, p));
        }
    }
    let (value, p) = best.expect("tau_max >= 1");
    Ok((value - current, p))
}

/// Swaps the two actions of every note.
pub fn flip_melody(melody: &Melody) -> Result<Melody> {
    let notes = melody
        .notes()
        .iter()
        .map(|&a| match a {
            0 => Ok(1),
            1 => Ok(0),
            _ => Err(Error::InvalidArgument("flip needs a two-action game".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    Melody::new(notes)
}

/// Note-by-note best response to the opponent's melody, same period.
pub fn copy_best_response_melody(game: &NormalFormGame, opponent: &Melody, player: Player) -> Result<Melody> {
    opponent.check(game, player.other())?;
    let replies: Vec<usize> = (0..game.num_actions(player.other()))
        .map(|b| {
            let values: Vec<Rational> =
                (0..game.num_actions(player)).map(|a| game.payoff_own(player, a, b).clone()).collect();
            argmax_all(&values)[0]
        })
        .collect();
    Melody::new(opponent.notes().iter().map(|&b| replies[b]).collect())
}

/// Flexible epsilon of the profile and whether it reaches 1/3.
pub fn mp_floor_check(profile: &PeriodicProfile<'_>, tau_max: (usize, usize)) -> Result<(Rational, bool)> {
    let (g1, _) = flexible_deviation_gain(profile, Player::One, tau_max.0)?;
    let (g2, _) = flexible_deviation_gain(profile, Player::Two, tau_max.1)?;
    let eps = g1.max(g2);
    let ok = eps >= ratio(1, 3);
    Ok((eps, ok))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tactic {
    /// The longer-period player best-responds note by note.
    Copy,
    /// The other player swaps every note.
    Flip,
}

impl fmt::Display for Tactic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tactic::Copy => "copy",
            Tactic::Flip => "flip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TacticReport {
    pub tactic: Tactic,
    pub deviator: Player,
    pub melody: Melody,
    pub gain: Rational,
}

/// The better of the two explicit deviations in a two-action game: the
/// player with the longer period copies, the other flips. Ties prefer copy.
pub fn tactic_report(profile: &PeriodicProfile<'_>) -> Result<TacticReport> {
    let game = profile.game();
    if !game.is_two_by_two() {
        return Err(Error::InvalidArgument("tactics need a two-action game".into()));
    }
    let longer = if profile.period(Player::Two) >= profile.period(Player::One) { Player::Two } else { Player::One };
    let other = longer.other();

    let copy = copy_best_response_melody(game, profile.melody(other), longer)?;
    let copy_gain = own_payoff(&profile.with_melody(longer, copy.clone())?, longer) - own_payoff(profile, longer);
    let flip = flip_melody(profile.melody(other))?;
    let flip_gain = own_payoff(&profile.with_melody(other, flip.clone())?, other) - own_payoff(profile, other);

    Ok(if copy_gain >= flip_gain {
        TacticReport { tactic: Tactic::Copy, deviator: longer, melody: copy, gain: copy_gain }
    } else {
        TacticReport { tactic: Tactic::Flip, deviator: other, melody: flip, gain: flip_gain }
    })
}

/// `max(1 - u, 2u - 1)` for the longer-period player's payoff `u`; never
/// below 1/3.
pub fn mp_tactic_floor(u_longer: &Rational) -> Rational {
    let copy = int(1) - u_longer;
    let flip = u_longer * int(2) - int(1);
    copy.max(flip)
}
