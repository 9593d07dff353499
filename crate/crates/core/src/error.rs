use thiserror::Error;

use crate::rational::Rational;

/// Errors produced by the analysis engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("invalid player index {0} (expected 1 or 2)")]
    InvalidPlayer(usize),

    #[error("epsilon must be non-negative, got {0}")]
    NegativeEpsilon(Rational),

    #[error("game is {rows}x{cols}, support enumeration is limited to {limit} actions per player")]
    GameTooLarge { rows: usize, cols: usize, limit: usize },

    #[error("delta {0} is outside the admissible range")]
    DeltaOutOfRange(Rational),

    #[error("region at distance >= {0} from the equilibrium is empty")]
    EmptyRegion(Rational),

    #[error("{what} of size {size} exceeds the limit {limit}")]
    LimitExceeded { what: &'static str, size: u128, limit: u128 },

    #[error("target profile is not a Nash equilibrium (max deviation {0})")]
    NotAnEquilibrium(Rational),

    #[error("period {tau} is shorter than the support size {support}")]
    PeriodTooShort { tau: usize, support: usize },

    #[error("bundle length {rho} does not divide the period {tau}")]
    RhoDoesNotDivide { rho: usize, tau: usize },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("schedule undefined at stage {0}")]
    ScheduleOutOfRange(u64),

    #[error("flexible bound must be at least the current period ({period}), got {tau_max}")]
    InvalidBound { tau_max: usize, period: usize },

    #[error("malformed machine: {0}")]
    MalformedMachine(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
