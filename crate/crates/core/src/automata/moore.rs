use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::EventuallyPeriodic;
use crate::error::{Error, Result};

/// An input-free Moore machine: each state has one successor and emits one
/// action identifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MooreFile", into = "MooreFile")]
pub struct MooreMachine {
    names: Vec<String>,
    start: usize,
    next: Vec<usize>,
    output: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct MooreFile {
    states: Vec<String>,
    start: String,
    transition: BTreeMap<String, String>,
    output: BTreeMap<String, String>,
}

impl TryFrom<MooreFile> for MooreMachine {
    type Error = Error;

    fn try_from(f: MooreFile) -> Result<Self> {
        let index: HashMap<&str, usize> = f.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != f.states.len() {
            return Err(Error::MalformedMachine("duplicate state names".into()));
        }
        let find = |s: &str| index.get(s).copied().ok_or_else(|| Error::MalformedMachine(format!("unknown state {s:?}")));
        for s in f.transition.keys().chain(f.output.keys()) {
            find(s)?;
        }
        let mut next = Vec::with_capacity(f.states.len());
        let mut output = Vec::with_capacity(f.states.len());
        for s in &f.states {
            let t = f.transition.get(s).ok_or_else(|| Error::MalformedMachine(format!("no transition from {s:?}")))?;
            next.push(find(t)?);
            let o = f.output.get(s).ok_or_else(|| Error::MalformedMachine(format!("no output for {s:?}")))?;
            output.push(o.clone());
        }
        let start = find(&f.start)?;
        MooreMachine::new(f.states, start, next, output)
    }
}

impl From<MooreMachine> for MooreFile {
    fn from(m: MooreMachine) -> Self {
        MooreFile {
            start: m.names[m.start].clone(),
            transition: m.names.iter().cloned().zip(m.next.iter().map(|&t| m.names[t].clone())).collect(),
            output: m.names.iter().cloned().zip(m.output.iter().cloned()).collect(),
            states: m.names,
        }
    }
}

impl MooreMachine {
    pub fn new(names: Vec<String>, start: usize, next: Vec<usize>, output: Vec<String>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::MalformedMachine("no states".into()));
        }
        if next.len() != n || output.len() != n {
            return Err(Error::MalformedMachine("transition and output must cover every state".into()));
        }
        if start >= n || next.iter().any(|&t| t >= n) {
            return Err(Error::MalformedMachine("state index out of range".into()));
        }
        Ok(MooreMachine { names, start, next, output })
    }

    /// States named `s0, s1, ...`.
    pub fn indexed(start: usize, next: Vec<usize>, output: Vec<String>) -> Result<Self> {
        let names = (0..next.len()).map(|i| format!("s{i}")).collect();
        Self::new(names, start, next, output)
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    /// Runs until the first repeated state. The cycle is kept at its
    /// detected length, not reduced.
    pub fn run(&self, max_steps: usize) -> Result<EventuallyPeriodic> {
        if max_steps < self.num_states() + 1 {
            return Err(Error::InvalidArgument(format!(
                "max_steps must be at least {} for {} states",
                self.num_states() + 1,
                self.num_states()
            )));
        }
        let mut first_seen = vec![usize::MAX; self.num_states()];
        let mut trace = Vec::new();
        let mut state = self.start;
        while first_seen[state] == usize::MAX {
            first_seen[state] = trace.len();
            trace.push(state);
            state = self.next[state];
        }
        let mut outputs: Vec<String> = trace.iter().map(|&s| self.output[s].clone()).collect();
        let period = outputs.split_off(first_seen[state]);
        Ok(EventuallyPeriodic { prefix: outputs, period })
    }

    /// First `len` outputs, step by step.
    pub fn simulate(&self, len: usize) -> Vec<String> {
        let mut state = self.start;
        (0..len)
            .map(|_| {
                let o = self.output[state].clone();
                state = self.next[state];
                o
            })
            .collect()
    }
}
