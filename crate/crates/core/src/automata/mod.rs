//! Finite-memory machines whose output streams are eventually periodic.

mod moore;
mod tm;

pub use moore::MooreMachine;
pub use tm::{BoundedTapeTM, Move, Rule, DEFAULT_CONFIG_LIMIT};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{Melody, PeriodicStrategy};

/// `prefix period period period ...`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

impl EventuallyPeriodic {
    /// First `len` symbols of the infinite stream.
    pub fn stream(&self, len: usize) -> Vec<String> {
        self.prefix.iter().chain(self.period.iter().cycle()).take(len).cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn lookup(actions: &[String], id: &str) -> Result<usize> {
    actions
        .iter()
        .position(|a| a == id)
        .ok_or_else(|| Error::InvalidStrategy(format!("machine outputs unknown action {id:?}")))
}

/// Maps the output identifiers onto `actions`. The period is kept as is.
pub fn to_strategy(ep: &EventuallyPeriodic, actions: &[String]) -> Result<PeriodicStrategy> {
    let prefix = ep.prefix.iter().map(|a| lookup(actions, a)).collect::<Result<Vec<_>>>()?;
    let notes = ep.period.iter().map(|a| lookup(actions, a)).collect::<Result<Vec<_>>>()?;
    Ok(PeriodicStrategy::new(prefix, Melody::new(notes)?))
}

/// Either kind of machine, as read from a JSON description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Machine {
    Moore(MooreMachine),
    Tm(BoundedTapeTM),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineRun {
    pub output: EventuallyPeriodic,
    /// Pigeonhole bound on `|prefix| + |period|`.
    pub state_bound: u128,
    /// Number of finite-automaton states actually explored.
    pub states: usize,
}

impl Machine {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("machine serializes")
    }

    /// Runs a Moore machine directly, or a Turing machine through its
    /// configuration automaton.
    pub fn run(&self, config_limit: usize) -> Result<MachineRun> {
        let fa;
        let (moore, bound) = match self {
            Machine::Moore(m) => (m, m.num_states() as u128),
            Machine::Tm(tm) => {
                fa = tm.to_fa(config_limit)?;
                (&fa, tm.config_bound())
            }
        };
        let output = moore.run(moore.num_states() + 1)?;
        Ok(MachineRun { output, state_bound: bound, states: moore.num_states() })
    }

    /// First `len` outputs by direct simulation.
    pub fn simulate(&self, len: usize) -> Result<Vec<String>> {
        match self {
            Machine::Moore(m) => Ok(m.simulate(len)),
            Machine::Tm(tm) => tm.simulate(len),
        }
    }
}
