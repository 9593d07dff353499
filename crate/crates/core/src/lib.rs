//! Exact analysis of unfolding games: a one-shot two-player game replayed
//! forever, each player bound to an eventually periodic action sequence of
//! a given period.
//!
//! All arithmetic is over exact rationals.

pub mod automata;
pub mod counterpoint;
pub mod error;
pub mod exec;
pub mod flexible;
pub mod game;
pub mod melody;
pub mod rational;
pub mod scan;
pub mod schedule;
pub mod sequence;

pub use error::{Error, Result};
pub use game::{MixedProfile, MixedStrategy, NormalFormGame, Player};
pub use rational::Rational;
pub use schedule::Schedule;
pub use sequence::{Melody, PeriodicProfile, PeriodicStrategy};
