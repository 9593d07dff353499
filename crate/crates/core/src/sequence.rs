//! Eventually periodic strategies `x y^inf`, their foldings, and the direct
//! (piece-enumerating) evaluation of long-run average payoffs.
//!
//! A melody's declared period is its length, even when the notes repeat
//! with a shorter fundamental period. Prefixes are carried along but never
//! influence payoffs or foldings: both melodies are evaluated phase-aligned
//! from the start of their periodic parts.

use std::fmt;

use num::integer::Integer;
use num::Zero;

use crate::error::{Error, Result};
use crate::game::{MixedProfile, MixedStrategy, NormalFormGame, Player};
use crate::rational::Rational;

/// Largest piece (in rounds) the direct evaluator will materialize.
pub const DEFAULT_PIECE_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Melody {
    notes: Vec<usize>,
}

impl Melody {
    pub fn new(notes: Vec<usize>) -> Result<Self> {
        if notes.is_empty() {
            return Err(Error::InvalidStrategy("melody must have at least one note".into()));
        }
        Ok(Melody { notes })
    }

    pub fn constant(action: usize, period: usize) -> Self {
        assert!(period > 0);
        Melody { notes: vec![action; period] }
    }

    pub fn notes(&self) -> &[usize] {
        &self.notes
    }

    /// The declared period (the melody length).
    pub fn period(&self) -> usize {
        self.notes.len()
    }

    pub fn note(&self, pos: usize) -> usize {
        self.notes[pos % self.notes.len()]
    }

    /// Smallest `d` dividing the length such that the melody is `d`-periodic.
    pub fn fundamental_period(&self) -> usize {
        let n = self.notes.len();
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| (d..n).all(|i| self.notes[i] == self.notes[i - d]))
            .unwrap_or(n)
    }

    pub fn fold(&self, num_actions: usize) -> MixedStrategy {
        let mut counts = vec![0usize; num_actions];
        for &a in &self.notes {
            counts[a] += 1;
        }
        MixedStrategy::from_counts(&counts)
    }

    pub fn rotate(&self, k: usize) -> Melody {
        let mut notes = self.notes.clone();
        let n = notes.len();
        notes.rotate_left(k % n);
        Melody { notes }
    }

    pub fn check(&self, game: &NormalFormGame, player: Player) -> Result<()> {
        let n = game.num_actions(player);
        if let Some(&a) = self.notes.iter().find(|&&a| a >= n) {
            return Err(Error::InvalidStrategy(format!("note {a} is not an action of player {player}")));
        }
        Ok(())
    }

    pub fn format(&self, actions: &[String]) -> String {
        format_notes(&self.notes, actions)
    }
}

/// Every melody of exactly `len` notes over `num_actions` actions, in
/// lexicographic order of action indices.
pub fn all_melodies(num_actions: usize, len: usize) -> impl Iterator<Item = Melody> {
    assert!(num_actions > 0 && len > 0);
    let total = (num_actions as u128).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut notes = vec![0; len];
        for slot in notes.iter_mut().rev() {
            *slot = (code % num_actions as u128) as usize;
            code /= num_actions as u128;
        }
        Melody { notes }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicStrategy {
    pub prefix: Vec<usize>,
    pub melody: Melody,
}

impl PeriodicStrategy {
    pub fn new(prefix: Vec<usize>, melody: Melody) -> Self {
        PeriodicStrategy { prefix, melody }
    }

    pub fn periodic(melody: Melody) -> Self {
        PeriodicStrategy { prefix: Vec::new(), melody }
    }

    pub fn period(&self) -> usize {
        self.melody.period()
    }

    /// Limit action frequencies; the prefix does not contribute.
    pub fn fold(&self, num_actions: usize) -> MixedStrategy {
        self.melody.fold(num_actions)
    }

    pub fn check(&self, game: &NormalFormGame, player: Player) -> Result<()> {
        let n = game.num_actions(player);
        if let Some(&a) = self.prefix.iter().find(|&&a| a >= n) {
            return Err(Error::InvalidStrategy(format!("prefix action {a} is not an action of player {player}")));
        }
        self.melody.check(game, player)
    }

    /// Parses the literal `"x;y"`; `x` may be empty. Identifiers are
    /// separated by `,`, or written back to back when every identifier of
    /// the player is a single character. A literal without `;` is a bare
    /// melody.
    pub fn parse(literal: &str, actions: &[String]) -> Result<Self> {
        let (prefix, melody) = match literal.split_once(';') {
            Some((x, y)) => (x, y),
            None => ("", literal),
        };
        let prefix = parse_notes(prefix, actions)?;
        let melody = Melody::new(parse_notes(melody, actions)?)
            .map_err(|_| Error::Parse(format!("empty melody in strategy literal {literal:?}")))?;
        Ok(PeriodicStrategy { prefix, melody })
    }

    pub fn format(&self, actions: &[String]) -> String {
        format!("{};{}", format_notes(&self.prefix, actions), self.melody.format(actions))
    }
}

fn parse_notes(s: &str, actions: &[String]) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let lookup = |id: &str| {
        actions
            .iter()
            .position(|a| a == id)
            .ok_or_else(|| Error::Parse(format!("unknown action {id:?} (expected one of {actions:?})")))
    };
    if s.contains(',') {
        return s.split(',').map(|t| lookup(t.trim())).collect();
    }
    if let Ok(a) = lookup(s) {
        return Ok(vec![a]);
    }
    let mut buf = [0u8; 4];
    s.chars().map(|c| lookup(c.encode_utf8(&mut buf))).collect()
}

fn format_notes(notes: &[usize], actions: &[String]) -> String {
    let sep = if actions.iter().all(|a| a.chars().count() == 1) { "" } else { "," };
    notes.iter().map(|&a| actions[a].as_str()).collect::<Vec<_>>().join(sep)
}

/// A pair of periodic strategies bound to the game they are played in.
#[derive(Clone, Debug)]
pub struct PeriodicProfile<'g> {
    game: &'g NormalFormGame,
    pub s1: PeriodicStrategy,
    pub s2: PeriodicStrategy,
}

impl<'g> PeriodicProfile<'g> {
    pub fn new(game: &'g NormalFormGame, s1: PeriodicStrategy, s2: PeriodicStrategy) -> Result<Self> {
        s1.check(game, Player::One)?;
        s2.check(game, Player::Two)?;
        Ok(PeriodicProfile { game, s1, s2 })
    }

    pub fn from_melodies(game: &'g NormalFormGame, m1: Melody, m2: Melody) -> Result<Self> {
        Self::new(game, PeriodicStrategy::periodic(m1), PeriodicStrategy::periodic(m2))
    }

    /// Parses two strategy literals against the game's action lists.
    pub fn parse(game: &'g NormalFormGame, s1: &str, s2: &str) -> Result<Self> {
        let s1 = PeriodicStrategy::parse(s1, game.actions(Player::One))?;
        let s2 = PeriodicStrategy::parse(s2, game.actions(Player::Two))?;
        Self::new(game, s1, s2)
    }

    pub fn game(&self) -> &'g NormalFormGame {
        self.game
    }

    pub fn strategy(&self, player: Player) -> &PeriodicStrategy {
        match player {
            Player::One => &self.s1,
            Player::Two => &self.s2,
        }
    }

    pub fn melody(&self, player: Player) -> &Melody {
        &self.strategy(player).melody
    }

    pub fn period(&self, player: Player) -> usize {
        self.melody(player).period()
    }

    /// Copy of the profile with `player`'s melody replaced.
    pub fn with_melody(&self, player: Player, melody: Melody) -> Result<Self> {
        melody.check(self.game, player)?;
        let mut out = self.clone();
        match player {
            Player::One => out.s1 = PeriodicStrategy::new(out.s1.prefix, melody),
            Player::Two => out.s2 = PeriodicStrategy::new(out.s2.prefix, melody),
        }
        Ok(out)
    }

    pub fn fold(&self) -> MixedProfile {
        MixedProfile::new(
            self.s1.fold(self.game.num_actions(Player::One)),
            self.s2.fold(self.game.num_actions(Player::Two)),
        )
    }

    pub fn gcd(&self) -> usize {
        self.s1.period().gcd(&self.s2.period())
    }

    pub fn piece_len(&self) -> u128 {
        (self.s1.period() as u128).lcm(&(self.s2.period() as u128))
    }

    fn check_piece(&self, limit: u128) -> Result<usize> {
        let len = self.piece_len();
        if len > limit {
            return Err(Error::LimitExceeded { what: "piece", size: len, limit });
        }
        Ok(len as usize)
    }

    /// The chords of one full joint cycle of `lcm(tau1, tau2)` rounds.
    pub fn piece(&self, limit: u128) -> Result<Vec<(usize, usize)>> {
        let len = self.check_piece(limit)?;
        let (m1, m2) = (&self.s1.melody, &self.s2.melody);
        Ok((0..len).map(|t| (m1.note(t), m2.note(t))).collect())
    }

    /// Long-run average payoffs by walking one piece round by round.
    pub fn avg_payoff_direct(&self, limit: u128) -> Result<(Rational, Rational)> {
        let len = self.check_piece(limit)?;
        let n2 = self.game.num_actions(Player::Two);
        let mut counts = vec![0u64; self.game.num_actions(Player::One) * n2];
        let (m1, m2) = (&self.s1.melody, &self.s2.melody);
        for t in 0..len {
            counts[m1.note(t) * n2 + m2.note(t)] += 1;
        }
        let mut u = [Rational::zero(), Rational::zero()];
        for (cell, &c) in counts.iter().enumerate().filter(|(_, c)| **c > 0) {
            let (a, b) = (cell / n2, cell % n2);
            let w = Rational::from_integer(c.into());
            u[0] += &w * self.game.payoff(Player::One, a, b);
            u[1] += &w * self.game.payoff(Player::Two, a, b);
        }
        let len = Rational::from_integer(len.into());
        let [u1, u2] = u;
        Ok((u1 / &len, u2 / len))
    }
}

impl fmt::Display for PeriodicProfile<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vs {}",
            self.s1.format(self.game.actions(Player::One)),
            self.s2.format(self.game.actions(Player::Two))
        )
    }
}
