//! Closed-form payoffs and deviation gains of periodic profiles via bundle
//! folding.
//!
//! With `rho = gcd(tau1, tau2)`, round `t` pairs note `t mod tau1` with note
//! `t mod tau2`, and both indices agree with `t` modulo `rho`. Over one
//! piece, every note of player 1 in residue class `j` meets every note of
//! player 2 in the same class exactly once. So the profile behaves like
//! `rho` independent copies of the base game, copy `j` being played with
//! the residue-class frequencies `mu_j`. Nothing here materializes the
//! piece; cost is linear in `tau1 + tau2`.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{argmax_all, MixedProfile, MixedStrategy, NormalFormGame, Player};
use crate::rational::Rational;
use crate::sequence::{Melody, PeriodicProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleFolding {
    pub rho: usize,
    pub bundle_profiles: Vec<MixedProfile>,
}

impl BundleFolding {
    /// Smallest positive weight over every bundle strategy of `player`.
    pub fn min_nonzero_component(&self, player: Player) -> Rational {
        self.bundle_profiles
            .iter()
            .flat_map(|p| p.get(player).weights().iter().filter(|w| w.is_positive()))
            .min()
            .cloned()
            .expect("bundle strategies are probability vectors")
    }

    /// Largest L-infinity distance of any bundle profile from `target`.
    pub fn max_distance(&self, target: &MixedProfile) -> Rational {
        self.bundle_profiles.iter().map(|p| p.distance(target)).max().unwrap_or_else(Rational::zero)
    }
}

/// Frequencies of the notes at positions `j, j + modulus, j + 2*modulus, ...`
/// for each `j < modulus`. `modulus` must divide the melody length.
pub fn residue_folding(melody: &Melody, modulus: usize, num_actions: usize) -> Vec<MixedStrategy> {
    debug_assert_eq!(melody.period() % modulus, 0);
    let mut counts = vec![vec![0usize; num_actions]; modulus];
    for (pos, &a) in melody.notes().iter().enumerate() {
        counts[pos % modulus][a] += 1;
    }
    counts.iter().map(|c| MixedStrategy::from_counts(c)).collect()
}

pub fn bundle_folding(profile: &PeriodicProfile<'_>) -> BundleFolding {
    let game = profile.game();
    let rho = profile.gcd();
    let f1 = residue_folding(profile.melody(Player::One), rho, game.num_actions(Player::One));
    let f2 = residue_folding(profile.melody(Player::Two), rho, game.num_actions(Player::Two));
    let bundle_profiles = f1.into_iter().zip(f2).map(|(a, b)| MixedProfile::new(a, b)).collect();
    BundleFolding { rho, bundle_profiles }
}

fn rho_rational(rho: usize) -> Rational {
    Rational::from_integer(rho.into())
}

pub fn unfolding_payoff(profile: &PeriodicProfile<'_>) -> (Rational, Rational) {
    let game = profile.game();
    let bf = bundle_folding(profile);
    let (mut u1, mut u2) = (Rational::zero(), Rational::zero());
    for mu in &bf.bundle_profiles {
        let (a, b) = game.expected_payoff(mu).expect("bundle profiles match the game");
        u1 += a;
        u2 += b;
    }
    let rho = rho_rational(bf.rho);
    (u1 / &rho, u2 / rho)
}

/// Average of the per-bundle deviation gains of `player`: the exact best
/// improvement available to it with a melody of its own declared period.
pub fn unfolding_deviation_gain(profile: &PeriodicProfile<'_>, player: Player) -> Rational {
    let bf = bundle_folding(profile);
    gain_from_bundles(profile.game(), &bf, player)
}

fn gain_from_bundles(game: &NormalFormGame, bf: &BundleFolding, player: Player) -> Rational {
    let total: Rational = bf
        .bundle_profiles
        .iter()
        .map(|mu| game.deviation_gain_unchecked(player, mu.get(player).weights(), mu.get(player.other()).weights()))
        .sum();
    total / rho_rational(bf.rho)
}

/// The epsilon for which the profile is an exact epsilon-equilibrium of the
/// unfolding game with fixed periods.
pub fn max_unfolding_deviation(profile: &PeriodicProfile<'_>) -> Rational {
    let bf = bundle_folding(profile);
    let g1 = gain_from_bundles(profile.game(), &bf, Player::One);
    let g2 = gain_from_bundles(profile.game(), &bf, Player::Two);
    g1.max(g2)
}

/// A best reply of `player`'s own period: the best response to each bundle
/// profile, repeated across all bundles. Ties go to the earliest action.
pub fn best_deviation_melody(profile: &PeriodicProfile<'_>, player: Player) -> Melody {
    let game = profile.game();
    let bf = bundle_folding(profile);
    let per_class: Vec<usize> = bf
        .bundle_profiles
        .iter()
        .map(|mu| argmax_all(&game.action_values_unchecked(player, mu.get(player.other()).weights()))[0])
        .collect();
    let period = profile.period(player);
    Melody::new((0..period).map(|t| per_class[t % bf.rho]).collect()).expect("period >= 1")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeterogeneityCount {
    pub total_bundles: usize,
    /// Number of bundles made only of each action, indexed by action.
    pub pure_counts: Vec<usize>,
    pub heterogeneous: usize,
}

/// Splits the melody into consecutive bundles of `rho` notes and counts the
/// bundles that are not constant.
pub fn count_heterogeneous_bundles(melody: &Melody, rho: usize, num_actions: usize) -> Result<HeterogeneityCount> {
    let tau = melody.period();
    if rho == 0 || !tau.is_multiple_of(rho) {
        return Err(Error::RhoDoesNotDivide { rho, tau });
    }
    let mut pure_counts = vec![0; num_actions];
    for bundle in melody.notes().chunks(rho) {
        if bundle.iter().all(|&a| a == bundle[0]) {
            pure_counts[bundle[0]] += 1;
        }
    }
    let total_bundles = tau / rho;
    let heterogeneous = total_bundles - pure_counts.iter().sum::<usize>();
    Ok(HeterogeneityCount { total_bundles, pure_counts, heterogeneous })
}
