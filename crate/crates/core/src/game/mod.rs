//! Finite two-player normal-form games with exact rational payoffs.
//!
//! Actions are addressed by their index in each player's action list; the
//! string identifiers are kept for parsing and display. Payoff tables are
//! indexed `[row action][column action]` for both players.

mod epsilon0;
mod io;
mod solve;

pub use epsilon0::epsilon0_estimate;
pub use io::GameFile;
pub use solve::{solve_ne, solve_ne_with_limit, DEFAULT_SUPPORT_LIMIT};

use std::collections::HashSet;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    /// Accepts the 1-based player numbers used on the command line.
    pub fn from_number(n: usize) -> Result<Player> {
        match n {
            1 => Ok(Player::One),
            2 => Ok(Player::Two),
            _ => Err(Error::InvalidPlayer(n)),
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormGame {
    actions: [Vec<String>; 2],
    payoffs: [Vec<Vec<Rational>>; 2],
}

impl NormalFormGame {
    pub fn new(
        actions_p1: Vec<String>,
        actions_p2: Vec<String>,
        payoff_p1: Vec<Vec<Rational>>,
        payoff_p2: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        for (who, acts) in [("player 1", &actions_p1), ("player 2", &actions_p2)] {
            if acts.is_empty() {
                return Err(Error::InvalidGame(format!("{who} has no actions")));
            }
            let mut seen = HashSet::new();
            for a in acts {
                if a.is_empty() || a.contains([',', ';']) || a.chars().any(char::is_whitespace) {
                    return Err(Error::InvalidGame(format!("{who}: bad action identifier {a:?}")));
                }
                if !seen.insert(a) {
                    return Err(Error::InvalidGame(format!("{who}: duplicate action {a:?}")));
                }
            }
        }
        for (who, table) in [("payoff_p1", &payoff_p1), ("payoff_p2", &payoff_p2)] {
            if table.len() != actions_p1.len() || table.iter().any(|row| row.len() != actions_p2.len()) {
                return Err(Error::InvalidGame(format!(
                    "{who} must be a {}x{} table",
                    actions_p1.len(),
                    actions_p2.len()
                )));
            }
        }
        Ok(NormalFormGame { actions: [actions_p1, actions_p2], payoffs: [payoff_p1, payoff_p2] })
    }

    /// Row player wins (payoff 1) on a match, column player on a mismatch.
    pub fn matching_pennies() -> Self {
        let one = || int(1);
        let zero = || int(0);
        Self::new(
            vec!["H".into(), "T".into()],
            vec!["H".into(), "T".into()],
            vec![vec![one(), zero()], vec![zero(), one()]],
            vec![vec![zero(), one()], vec![one(), zero()]],
        )
        .expect("matching pennies is well formed")
    }

    /// The modified matching pennies family `G_delta`, whose unique
    /// equilibrium is `((delta, 1 - delta), (delta, 1 - delta))` for
    /// `0 < delta < 1`.
    pub fn modified_matching_pennies(delta: &Rational) -> Result<Self> {
        if delta.is_negative() || delta > &int(1) {
            return Err(Error::DeltaOutOfRange(delta.clone()));
        }
        let d = delta.clone();
        let one = int(1);
        let row = vec![vec![&d + &one, one.clone()], vec![&d * int(2), &d + &one]];
        let col = vec![vec![&d * int(2), &d + &one], vec![&d + &one, one.clone()]];
        Self::new(vec!["H".into(), "T".into()], vec!["H".into(), "T".into()], row, col)
    }

    pub fn actions(&self, player: Player) -> &[String] {
        &self.actions[player.index()]
    }

    pub fn num_actions(&self, player: Player) -> usize {
        self.actions[player.index()].len()
    }

    pub fn action_index(&self, player: Player, id: &str) -> Option<usize> {
        self.actions[player.index()].iter().position(|a| a == id)
    }

    /// Payoff table of `player`, indexed `[row][column]`.
    pub fn table(&self, player: Player) -> &[Vec<Rational>] {
        &self.payoffs[player.index()]
    }

    pub fn payoff(&self, player: Player, row: usize, col: usize) -> &Rational {
        &self.payoffs[player.index()][row][col]
    }

    /// Payoff to `player` when it plays `own` and the opponent plays `opp`.
    pub fn payoff_own(&self, player: Player, own: usize, opp: usize) -> &Rational {
        match player {
            Player::One => &self.payoffs[0][own][opp],
            Player::Two => &self.payoffs[1][opp][own],
        }
    }

    pub fn is_two_by_two(&self) -> bool {
        self.actions[0].len() == 2 && self.actions[1].len() == 2
    }

    pub fn check_strategy(&self, player: Player, s: &MixedStrategy) -> Result<()> {
        if s.len() != self.num_actions(player) {
            return Err(Error::InvalidStrategy(format!(
                "player {player} strategy has {} weights, game has {} actions",
                s.len(),
                self.num_actions(player)
            )));
        }
        Ok(())
    }

    pub fn check_profile(&self, profile: &MixedProfile) -> Result<()> {
        self.check_strategy(Player::One, &profile.p1)?;
        self.check_strategy(Player::Two, &profile.p2)
    }

    /// `u_i(a, mu_{-i})` for every action `a` of `player`.
    pub fn action_values(&self, player: Player, opponent: &MixedStrategy) -> Result<Vec<Rational>> {
        self.check_strategy(player.other(), opponent)?;
        Ok(self.action_values_unchecked(player, opponent.weights()))
    }

    pub(crate) fn action_values_unchecked(&self, player: Player, opponent: &[Rational]) -> Vec<Rational> {
        (0..self.num_actions(player))
            .map(|a| {
                opponent
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(b, w)| w * self.payoff_own(player, a, b))
                    .sum()
            })
            .collect()
    }

    pub fn expected_payoff(&self, profile: &MixedProfile) -> Result<(Rational, Rational)> {
        self.check_profile(profile)?;
        let mut u = [Rational::zero(), Rational::zero()];
        for (a, wa) in profile.p1.weights().iter().enumerate().filter(|(_, w)| !w.is_zero()) {
            for (b, wb) in profile.p2.weights().iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                let w = wa * wb;
                u[0] += &w * self.payoff(Player::One, a, b);
                u[1] += &w * self.payoff(Player::Two, a, b);
            }
        }
        let [u1, u2] = u;
        Ok((u1, u2))
    }

    /// Maximum gain `player` can obtain by a unilateral deviation: always >= 0.
    pub fn deviation_gain(&self, profile: &MixedProfile, player: Player) -> Result<Rational> {
        self.check_profile(profile)?;
        Ok(self.deviation_gain_unchecked(player, profile.get(player).weights(), profile.get(player.other()).weights()))
    }

    pub(crate) fn deviation_gain_unchecked(&self, player: Player, own: &[Rational], opp: &[Rational]) -> Rational {
        let values = self.action_values_unchecked(player, opp);
        let current: Rational = values.iter().zip(own).map(|(v, w)| v * w).sum();
        let best = values.into_iter().max().expect("non-empty action set");
        best - current
    }

    pub fn max_deviation(&self, profile: &MixedProfile) -> Result<Rational> {
        let g1 = self.deviation_gain(profile, Player::One)?;
        let g2 = self.deviation_gain(profile, Player::Two)?;
        Ok(g1.max(g2))
    }

    /// All maximizers of `u_i(a, opponent)`, in action-list order.
    pub fn best_response_actions(&self, opponent: &MixedStrategy, player: Player) -> Result<Vec<usize>> {
        let values = self.action_values(player, opponent)?;
        Ok(argmax_all(&values))
    }

    pub fn is_epsilon_ne(&self, profile: &MixedProfile, eps: &Rational) -> Result<bool> {
        if eps.is_negative() {
            return Err(Error::NegativeEpsilon(eps.clone()));
        }
        Ok(&self.max_deviation(profile)? <= eps)
    }

    pub fn format_strategy(&self, player: Player, s: &MixedStrategy) -> String {
        self.actions(player)
            .iter()
            .zip(s.weights())
            .map(|(a, w)| format!("{a}:{}", format_rational(w)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub(crate) fn argmax_all(values: &[Rational]) -> Vec<usize> {
    let best = values.iter().max().expect("non-empty");
    values.iter().enumerate().filter(|(_, v)| *v == best).map(|(i, _)| i).collect()
}

/// Probability vector over one player's actions, indexed like the action list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedStrategy {
    weights: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidStrategy("empty weight vector".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidStrategy(format!("negative weight {w}")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidStrategy(format!("weights sum to {total}, not 1")));
        }
        Ok(MixedStrategy { weights })
    }

    pub fn pure(num_actions: usize, action: usize) -> Self {
        assert!(action < num_actions, "action {action} out of range");
        let weights = (0..num_actions)
            .map(|a| if a == action { Rational::one() } else { Rational::zero() })
            .collect();
        MixedStrategy { weights }
    }

    pub fn from_counts(counts: &[usize]) -> Self {
        let total: usize = counts.iter().sum();
        assert!(total > 0, "counts must not all be zero");
        let weights = counts.iter().map(|&c| Rational::new(c.into(), total.into())).collect();
        MixedStrategy { weights }
    }

    /// Parses `"1/2,1/2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(crate::rational::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, action: usize) -> &Rational {
        &self.weights[action]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.weights.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(i, _)| i).collect()
    }

    pub fn distance(&self, other: &MixedStrategy) -> Rational {
        crate::rational::linf(&self.weights, &other.weights)
    }
}

impl fmt::Display for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.weights.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedProfile {
    pub p1: MixedStrategy,
    pub p2: MixedStrategy,
}

impl MixedProfile {
    pub fn new(p1: MixedStrategy, p2: MixedStrategy) -> Self {
        MixedProfile { p1, p2 }
    }

    pub fn get(&self, player: Player) -> &MixedStrategy {
        match player {
            Player::One => &self.p1,
            Player::Two => &self.p2,
        }
    }

    /// Parses `"1/2,1/2;1/3,2/3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("mixed profile needs ';' between players: {s:?}")))?;
        Ok(MixedProfile::new(MixedStrategy::parse(a)?, MixedStrategy::parse(b)?))
    }

    /// L-infinity distance over both players' weight vectors.
    pub fn distance(&self, other: &MixedProfile) -> Rational {
        self.p1.distance(&other.p1).max(self.p2.distance(&other.p2))
    }
}

impl fmt::Display for MixedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p1, self.p2)
    }
}
