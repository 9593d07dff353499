//! Nash equilibria of small games by support enumeration.
//!
//! For every pair of supports `(I, J)` we solve the indifference systems
//! exactly: the column strategy on `J` must make every row action in `I`
//! equally good, and vice versa. Underdetermined systems are resolved by
//! setting free variables to zero, which yields the basic solutions that
//! cover the extreme equilibria of degenerate games. Every candidate is
//! accepted only after `max_deviation == 0` is verified.

use num::{Signed, Zero};

use super::{MixedProfile, MixedStrategy, NormalFormGame, Player};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const DEFAULT_SUPPORT_LIMIT: usize = 6;

pub fn solve_ne(game: &NormalFormGame) -> Result<Vec<MixedProfile>> {
    solve_ne_with_limit(game, DEFAULT_SUPPORT_LIMIT)
}

pub fn solve_ne_with_limit(game: &NormalFormGame, limit: usize) -> Result<Vec<MixedProfile>> {
    let (n1, n2) = (game.num_actions(Player::One), game.num_actions(Player::Two));
    if n1 > limit || n2 > limit {
        return Err(Error::GameTooLarge { rows: n1, cols: n2, limit });
    }
    let mut found: Vec<MixedProfile> = Vec::new();
    for mask1 in 1u32..(1 << n1) {
        let rows = bits(mask1, n1);
        for mask2 in 1u32..(1 << n2) {
            let cols = bits(mask2, n2);
            // column mix on `cols` equalizing player 1 over `rows`
            let Some(y) = indifference(game, Player::One, &rows, &cols, n2) else { continue };
            let Some(x) = indifference(game, Player::Two, &cols, &rows, n1) else { continue };
            let candidate = MixedProfile::new(x, y);
            if found.contains(&candidate) {
                continue;
            }
            if game.max_deviation(&candidate)?.is_zero() {
                found.push(candidate);
            }
        }
    }
    Ok(found)
}

fn bits(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// Strategy of `player.other()` supported on `mix_support` that makes
/// `player` indifferent among `equalized` actions.
fn indifference(
    game: &NormalFormGame,
    player: Player,
    equalized: &[usize],
    mix_support: &[usize],
    opp_actions: usize,
) -> Option<MixedStrategy> {
    let k = mix_support.len();
    // unknowns: weights on mix_support, then the common value v
    let mut a = Vec::with_capacity(equalized.len() + 1);
    let mut b = Vec::with_capacity(equalized.len() + 1);
    for &own in equalized {
        let mut row: Vec<Rational> = mix_support.iter().map(|&opp| game.payoff_own(player, own, opp).clone()).collect();
        row.push(Rational::from_integer((-1).into()));
        a.push(row);
        b.push(Rational::zero());
    }
    let mut sum_row = vec![Rational::from_integer(1.into()); k];
    sum_row.push(Rational::zero());
    a.push(sum_row);
    b.push(Rational::from_integer(1.into()));

    let sol = solve_linear(a, b)?;
    let mut weights = vec![Rational::zero(); opp_actions];
    for (&idx, w) in mix_support.iter().zip(&sol[..k]) {
        if w.is_negative() {
            return None;
        }
        weights[idx] = w.clone();
    }
    MixedStrategy::new(weights).ok()
}

/// Exact Gauss-Jordan elimination. Returns a solution with free variables
/// set to zero, or `None` when the system is inconsistent.
pub(crate) fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
                let t = &f * &b[r];
                b[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = b[row].clone();
    }
    Some(x)
}
