use serde::{Deserialize, Serialize};

use super::{NormalFormGame, Player};
use crate::error::Result;
use crate::rational::{serde_table, Rational};

/// On-disk JSON layout of a game. Rationals are written as `"p/q"`
/// strings; integers are accepted on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameFile {
    pub actions_p1: Vec<String>,
    pub actions_p2: Vec<String>,
    #[serde(with = "serde_table")]
    pub payoff_p1: Vec<Vec<Rational>>,
    #[serde(with = "serde_table")]
    pub payoff_p2: Vec<Vec<Rational>>,
}

impl From<&NormalFormGame> for GameFile {
    fn from(g: &NormalFormGame) -> Self {
        GameFile {
            actions_p1: g.actions(Player::One).to_vec(),
            actions_p2: g.actions(Player::Two).to_vec(),
            payoff_p1: g.table(Player::One).to_vec(),
            payoff_p2: g.table(Player::Two).to_vec(),
        }
    }
}

impl TryFrom<GameFile> for NormalFormGame {
    type Error = crate::error::Error;

    fn try_from(f: GameFile) -> Result<Self> {
        NormalFormGame::new(f.actions_p1, f.actions_p2, f.payoff_p1, f.payoff_p2)
    }
}

impl NormalFormGame {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GameFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GameFile::from(self)).expect("game serializes")
    }
}
