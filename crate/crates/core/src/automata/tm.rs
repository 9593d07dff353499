use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::MooreMachine;
use crate::error::{Error, Result};

pub const DEFAULT_CONFIG_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rule {
    pub next: usize,
    pub write: usize,
    pub mv: Move,
}

/// A deterministic Turing machine confined to `tape.len()` cells. Each step
/// emits the action assigned to the symbol under `output_cell`.
///
/// States and symbols are indices into `states` and `alphabet`; `rules` is
/// keyed by `(state, symbol read)`. Moving the head off the tape is an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TmFile", into = "TmFile")]
pub struct BoundedTapeTM {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub start: usize,
    pub tape: Vec<usize>,
    pub head: usize,
    pub output_cell: usize,
    /// Action emitted for each tape symbol.
    pub output: Vec<String>,
    pub rules: BTreeMap<(usize, usize), Rule>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RuleFile {
    state: String,
    read: String,
    next: String,
    write: String,
    #[serde(rename = "move")]
    mv: Move,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TmFile {
    states: Vec<String>,
    alphabet: Vec<String>,
    start: String,
    tape: Vec<String>,
    #[serde(default)]
    head: usize,
    #[serde(default)]
    output_cell: usize,
    /// Symbol to action; symbols missing here are emitted verbatim.
    #[serde(default)]
    output: BTreeMap<String, String>,
    rules: Vec<RuleFile>,
}

fn index_of(names: &[String], what: &str, name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::MalformedMachine(format!("unknown {what} {name:?}")))
}

impl TryFrom<TmFile> for BoundedTapeTM {
    type Error = Error;

    fn try_from(f: TmFile) -> Result<Self> {
        let st = |n: &str| index_of(&f.states, "state", n);
        let sym = |n: &str| index_of(&f.alphabet, "symbol", n);
        let mut rules = BTreeMap::new();
        for r in &f.rules {
            let key = (st(&r.state)?, sym(&r.read)?);
            let rule = Rule { next: st(&r.next)?, write: sym(&r.write)?, mv: r.mv };
            if rules.insert(key, rule).is_some() {
                return Err(Error::MalformedMachine(format!("two rules for ({}, {})", r.state, r.read)));
            }
        }
        for s in f.output.keys() {
            sym(s)?;
        }
        let tm = BoundedTapeTM {
            start: st(&f.start)?,
            tape: f.tape.iter().map(|s| sym(s)).collect::<Result<_>>()?,
            head: f.head,
            output_cell: f.output_cell,
            output: f.alphabet.iter().map(|s| f.output.get(s).unwrap_or(s).clone()).collect(),
            rules,
            states: f.states,
            alphabet: f.alphabet,
        };
        tm.validate()?;
        Ok(tm)
    }
}

impl From<BoundedTapeTM> for TmFile {
    fn from(tm: BoundedTapeTM) -> Self {
        let rules = tm
            .rules
            .iter()
            .map(|(&(q, a), r)| RuleFile {
                state: tm.states[q].clone(),
                read: tm.alphabet[a].clone(),
                next: tm.states[r.next].clone(),
                write: tm.alphabet[r.write].clone(),
                mv: r.mv,
            })
            .collect();
        TmFile {
            start: tm.states[tm.start].clone(),
            tape: tm.tape.iter().map(|&s| tm.alphabet[s].clone()).collect(),
            head: tm.head,
            output_cell: tm.output_cell,
            output: tm.alphabet.iter().cloned().zip(tm.output.iter().cloned()).collect(),
            rules,
            states: tm.states,
            alphabet: tm.alphabet,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Config {
    state: usize,
    tape: Vec<usize>,
    head: usize,
}

impl BoundedTapeTM {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::MalformedMachine(m.to_string()));
        let (q, g, k) = (self.states.len(), self.alphabet.len(), self.tape.len());
        if q == 0 || g == 0 || k == 0 {
            return bad("states, alphabet and tape must be non-empty");
        }
        if self.start >= q || self.head >= k || self.output_cell >= k {
            return bad("start state, head or output cell out of range");
        }
        if self.output.len() != g || self.tape.iter().any(|&s| s >= g) {
            return bad("tape symbols and outputs must match the alphabet");
        }
        for (&(s, a), r) in &self.rules {
            if s >= q || a >= g || r.next >= q || r.write >= g {
                return bad("rule refers to an unknown state or symbol");
            }
        }
        Ok(())
    }

    /// `|Q| * |G|^k * k`, saturating.
    pub fn config_bound(&self) -> u128 {
        let k = self.tape.len() as u32;
        (self.alphabet.len() as u128)
            .checked_pow(k)
            .and_then(|c| c.checked_mul(self.states.len() as u128))
            .and_then(|c| c.checked_mul(k as u128))
            .unwrap_or(u128::MAX)
    }

    fn initial(&self) -> Config {
        Config { state: self.start, tape: self.tape.clone(), head: self.head }
    }

    fn emit(&self, c: &Config) -> String {
        self.output[c.tape[self.output_cell]].clone()
    }

    fn step(&self, c: &Config) -> Result<Config> {
        let read = c.tape[c.head];
        let rule = self.rules.get(&(c.state, read)).ok_or_else(|| {
            Error::MalformedMachine(format!("no rule for state {:?} reading {:?}", self.states[c.state], self.alphabet[read]))
        })?;
        let head = match rule.mv {
            Move::L => c.head.checked_sub(1),
            Move::R => Some(c.head + 1).filter(|&h| h < self.tape.len()),
        }
        .ok_or_else(|| Error::MalformedMachine(format!("head leaves the tape at cell {}", c.head)))?;
        let mut tape = c.tape.clone();
        tape[c.head] = rule.write;
        Ok(Config { state: rule.next, tape, head })
    }

    /// First `len` outputs, step by step.
    pub fn simulate(&self, len: usize) -> Result<Vec<String>> {
        self.validate()?;
        let mut c = self.initial();
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.emit(&c));
            if i + 1 < len {
                c = self.step(&c)?;
            }
        }
        Ok(out)
    }

    fn config_name(&self, c: &Config) -> String {
        let tape: Vec<&str> = c.tape.iter().map(|&s| self.alphabet[s].as_str()).collect();
        format!("{}@{}[{}]", self.states[c.state], c.head, tape.join(","))
    }

    /// The automaton whose states are the reachable configurations.
    pub fn to_fa(&self, config_limit: usize) -> Result<MooreMachine> {
        self.validate()?;
        let mut configs = vec![self.initial()];
        let mut index: HashMap<Config, usize> = HashMap::from([(self.initial(), 0)]);
        let mut next = Vec::new();
        while next.len() < configs.len() {
            let succ = self.step(&configs[next.len()])?;
            let j = match index.get(&succ) {
                Some(&j) => j,
                None => {
                    if configs.len() >= config_limit {
                        return Err(Error::LimitExceeded {
                            what: "reachable configurations",
                            size: configs.len() as u128 + 1,
                            limit: config_limit as u128,
                        });
                    }
                    index.insert(succ.clone(), configs.len());
                    configs.push(succ);
                    configs.len() - 1
                }
            };
            next.push(j);
        }
        let names = configs.iter().map(|c| self.config_name(c)).collect();
        let output = configs.iter().map(|c| self.emit(c)).collect();
        MooreMachine::new(names, 0, next, output)
    }
}
