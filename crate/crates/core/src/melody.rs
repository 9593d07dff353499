//! Simple melodies approximating a target mixed strategy, and the per-stage
//! equilibrium sequence built from them.

use num::Zero;

use crate::counterpoint::{bundle_folding, max_unfolding_deviation, unfolding_payoff};
use crate::error::{Error, Result};
use crate::exec;
use crate::game::{MixedProfile, MixedStrategy, NormalFormGame, Player};
use crate::rational::Rational;
use crate::schedule::Schedule;
use crate::sequence::{Melody, PeriodicProfile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Apportionment {
    /// Note count per action, zero outside the support.
    pub counts: Vec<usize>,
    pub tau: usize,
}

impl Apportionment {
    pub fn support_counts(&self) -> Vec<usize> {
        self.counts.iter().copied().filter(|&c| c > 0).collect()
    }
}

/// Floor of `sigma(a) * tau` for every supported action but the last, which
/// takes the remainder.
pub fn apportion(target: &MixedStrategy, tau: usize) -> Result<Apportionment> {
    let support = target.support();
    if tau < support.len() {
        return Err(Error::PeriodTooShort { tau, support: support.len() });
    }
    let mut counts = vec![0; target.len()];
    let tau_r = Rational::from_integer(tau.into());
    let (&last, rest) = support.split_last().expect("mixed strategies have non-empty support");
    let mut used = 0;
    for &a in rest {
        let c: usize = (target.weight(a) * &tau_r).floor().to_integer().try_into().expect("bounded by tau");
        counts[a] = c;
        used += c;
    }
    counts[last] = tau - used;
    Ok(Apportionment { counts, tau })
}

/// Block-form melody `a1^c1 a2^c2 ...` in action order.
pub fn simple_melody(target: &MixedStrategy, tau: usize) -> Result<Melody> {
    let ap = apportion(target, tau)?;
    let notes = ap.counts.iter().enumerate().flat_map(|(a, &c)| std::iter::repeat_n(a, c)).collect();
    Melody::new(notes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRecord {
    pub n: u64,
    pub tau1: usize,
    pub tau2: usize,
    pub epsilon: Rational,
    pub fold_distance: Rational,
    /// Largest distance of a bundle profile from the target.
    pub bundle_distance: Rational,
    pub payoffs: (Rational, Rational),
}

fn period_at(s: &Schedule, n: u64) -> Result<usize> {
    usize::try_from(s.at(n)?).map_err(|_| Error::ScheduleOutOfRange(n))
}

/// One stage of the sequence. Does not check that `sigma` is an equilibrium.
pub fn convergence_record(
    game: &NormalFormGame,
    sigma: &MixedProfile,
    s1: &Schedule,
    s2: &Schedule,
    n: u64,
) -> Result<ConvergenceRecord> {
    let (tau1, tau2) = (period_at(s1, n)?, period_at(s2, n)?);
    let profile = stage_profile(game, sigma, tau1, tau2)?;
    Ok(ConvergenceRecord {
        n,
        tau1,
        tau2,
        epsilon: max_unfolding_deviation(&profile),
        fold_distance: profile.fold().distance(sigma),
        bundle_distance: bundle_folding(&profile).max_distance(sigma),
        payoffs: unfolding_payoff(&profile),
    })
}

/// Records for `n_from..=n_to`, ordered by `n`.
pub fn equilibrium_sequence(
    game: &NormalFormGame,
    sigma: &MixedProfile,
    s1: &Schedule,
    s2: &Schedule,
    n_from: u64,
    n_to: u64,
) -> Result<Vec<ConvergenceRecord>> {
    game.check_profile(sigma)?;
    let dev = game.max_deviation(sigma)?;
    if !dev.is_zero() {
        return Err(Error::NotAnEquilibrium(dev));
    }
    if n_from == 0 || n_from > n_to {
        return Err(Error::InvalidArgument(format!("empty stage range {n_from}..={n_to}")));
    }
    let stages: Vec<u64> = (n_from..=n_to).collect();
    exec::try_par_map(stages, |n| convergence_record(game, sigma, s1, s2, n))
}

/// The simple-melody profile at periods `(tau1, tau2)`.
pub fn stage_profile<'g>(
    game: &'g NormalFormGame,
    sigma: &MixedProfile,
    tau1: usize,
    tau2: usize,
) -> Result<PeriodicProfile<'g>> {
    let m1 = simple_melody(sigma.get(Player::One), tau1)?;
    let m2 = simple_melody(sigma.get(Player::Two), tau2)?;
    PeriodicProfile::from_melodies(game, m1, m2)
}
