//! Rationality schedules `tau(n)` and the number theory of schedule pairs.
//!
//! Affine schedules `a*n + b` get exact limit verdicts. For `a1, a2 >= 1`
//! any common divisor of `a1*n + b1` and `a2*n + b2` also divides
//! `a2*b1 - a1*b2`. When that integer is non-zero the gcd stays bounded
//! while both periods grow, so the gcd ratio tends to 0. When it is zero
//! the schedules are proportional: with `a1 = g*p`, `a2 = g*q` and
//! `gcd(p, q) = 1` they are `p*t` and `q*t` for an integer `t`, and the
//! gcd ratio is constantly `1 / min(p, q)`.
//!
//! Explicit tables only support finite-horizon reports.

use std::fmt;

use num::integer::Integer;
use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// `tau(n) = slope * n + offset`.
    Affine { slope: u64, offset: i64 },
    /// `tau(n) = table[n - 1]`.
    Explicit(Vec<u64>),
}

impl Schedule {
    pub fn affine(slope: u64, offset: i64) -> Result<Self> {
        if (slope as i128) + (offset as i128) < 1 {
            return Err(Error::InvalidSchedule(format!("{slope}*n{offset:+} is not positive at n = 1")));
        }
        Ok(Schedule::Affine { slope, offset })
    }

    pub fn explicit(table: Vec<u64>) -> Result<Self> {
        if table.is_empty() || table.contains(&0) {
            return Err(Error::InvalidSchedule("explicit schedules need positive entries".into()));
        }
        Ok(Schedule::Explicit(table))
    }

    pub fn identity() -> Self {
        Schedule::Affine { slope: 1, offset: 0 }
    }

    /// Period at stage `n >= 1`.
    pub fn at(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::ScheduleOutOfRange(n));
        }
        match self {
            Schedule::Affine { slope, offset } => {
                let v = *slope as i128 * n as i128 + *offset as i128;
                u64::try_from(v).ok().filter(|&v| v >= 1).ok_or(Error::ScheduleOutOfRange(n))
            }
            Schedule::Explicit(t) => t.get(n as usize - 1).copied().ok_or(Error::ScheduleOutOfRange(n)),
        }
    }

    /// Last stage at which the schedule is defined, if bounded.
    pub fn horizon(&self) -> Option<u64> {
        match self {
            Schedule::Affine { .. } => None,
            Schedule::Explicit(t) => Some(t.len() as u64),
        }
    }

    pub fn tends_to_infinity(&self) -> Option<bool> {
        match self {
            Schedule::Affine { slope, .. } => Some(*slope >= 1),
            Schedule::Explicit(_) => None,
        }
    }

    /// Accepts `"a*n+b"` (also `n`, `n+1`, `2n-1`, `7`) and `"[t1,t2,...]"`.
    pub fn parse(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidSchedule(format!("cannot parse schedule {s:?}"));
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let table = inner
                .split(',')
                .map(|t| t.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return Schedule::explicit(table);
        }
        match text.split_once('n') {
            Some((coef, rest)) => {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let slope = if coef.is_empty() { 1 } else { coef.parse::<u64>().map_err(|_| bad())? };
                let offset = match rest {
                    "" => 0,
                    r if r.starts_with('+') => r[1..].parse::<i64>().map_err(|_| bad())?,
                    r if r.starts_with('-') => r.parse::<i64>().map_err(|_| bad())?,
                    _ => return Err(bad()),
                };
                Schedule::affine(slope, offset)
            }
            None => Schedule::affine(0, text.parse::<i64>().map_err(|_| bad())?),
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Affine { slope: 0, offset } => write!(f, "{offset}"),
            Schedule::Affine { slope: 1, offset: 0 } => f.write_str("n"),
            Schedule::Affine { slope: 1, offset } => write!(f, "n{offset:+}"),
            Schedule::Affine { slope, offset: 0 } => write!(f, "{slope}*n"),
            Schedule::Affine { slope, offset } => write!(f, "{slope}*n{offset:+}"),
            Schedule::Explicit(t) => {
                let parts: Vec<_> = t.iter().map(u64::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

/// `gcd(tau1(n), tau2(n)) / min(tau1(n), tau2(n))`.
pub fn gcd_ratio(s1: &Schedule, s2: &Schedule, n: u64) -> Result<Rational> {
    let (t1, t2) = (s1.at(n)?, s2.at(n)?);
    Ok(Rational::new(t1.gcd(&t2).into(), t1.min(t2).into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClassification {
    pub almost_identical: Verdict,
    pub almost_coprime: Verdict,
    pub eventually_distinct: Verdict,
    /// Exact `limsup` of the gcd ratio; `None` when not decidable.
    pub limsup_gcd_ratio: Option<Rational>,
    pub witness: String,
}

/// Exact `limsup` of the gcd ratio of two affine schedules.
pub fn limsup_gcd_ratio(s1: &Schedule, s2: &Schedule) -> Option<Rational> {
    let (&Schedule::Affine { slope: a1, offset: b1 }, &Schedule::Affine { slope: a2, offset: b2 }) = (s1, s2) else {
        return None;
    };
    let r = match (a1, a2) {
        (0, 0) => {
            let (c1, c2) = (b1 as u64, b2 as u64);
            Rational::new(c1.gcd(&c2).into(), c1.min(c2).into())
        }
        (0, a) | (a, 0) => {
            // the constant side is eventually the minimum; the gcd with it is
            // periodic in n with period c
            let (c, b) = if a1 == 0 { (b1 as u64, b2) } else { (b2 as u64, b1) };
            let start = c as i128 + b.unsigned_abs() as i128 + 1;
            let best = (start..start + c as i128)
                .map(|n| (c as i128).gcd(&(a as i128 * n + b as i128)))
                .max()
                .expect("c >= 1");
            Rational::new(best.into(), c.into())
        }
        _ => {
            let det = a2 as i128 * b1 as i128 - a1 as i128 * b2 as i128;
            if det != 0 {
                Rational::zero()
            } else {
                let g = a1.gcd(&a2);
                Rational::new(1.into(), (a1 / g).min(a2 / g).into())
            }
        }
    };
    Some(r)
}

pub fn classify(s1: &Schedule, s2: &Schedule) -> PairClassification {
    match (s1, s2) {
        (&Schedule::Affine { slope: a1, offset: b1 }, &Schedule::Affine { slope: a2, offset: b2 }) => {
            let limsup = limsup_gcd_ratio(s1, s2).expect("affine pair");
            let almost_identical = match (a1, a2) {
                (0, 0) => b1 == b2,
                (0, _) | (_, 0) => false,
                _ => a1 == a2,
            };
            let eventually_distinct = (a1, b1) != (a2, b2);
            let almost_coprime = limsup.is_zero();
            let witness = if a1 >= 1 && a2 >= 1 {
                let det = a2 as i128 * b1 as i128 - a1 as i128 * b2 as i128;
                if det != 0 {
                    format!("gcd(tau1(n), tau2(n)) divides {} while both periods grow", det.abs())
                } else {
                    format!("proportional schedules; gcd ratio is constantly {}", format_rational(&limsup))
                }
            } else {
                format!("a constant schedule keeps the gcd ratio at limsup {}", format_rational(&limsup))
            };
            PairClassification {
                almost_identical: almost_identical.into(),
                almost_coprime: almost_coprime.into(),
                eventually_distinct: eventually_distinct.into(),
                limsup_gcd_ratio: Some(limsup),
                witness,
            }
        }
        _ => {
            let horizon = s1.horizon().into_iter().chain(s2.horizon()).min().unwrap_or(0);
            let witness = finite_report(s1, s2, horizon);
            PairClassification {
                almost_identical: Verdict::Unknown,
                almost_coprime: Verdict::Unknown,
                eventually_distinct: Verdict::Unknown,
                limsup_gcd_ratio: None,
                witness,
            }
        }
    }
}

fn finite_report(s1: &Schedule, s2: &Schedule, horizon: u64) -> String {
    let mut max: Option<(Rational, u64)> = None;
    let mut equal = 0;
    let mut last = None;
    for n in 1..=horizon {
        let (Ok(t1), Ok(t2), Ok(r)) = (s1.at(n), s2.at(n), gcd_ratio(s1, s2, n)) else { break };
        if t1 == t2 {
            equal += 1;
        }
        if max.as_ref().is_none_or(|(m, _)| &r > m) {
            max = Some((r.clone(), n));
        }
        last = Some(r);
    }
    match (max, last) {
        (Some((m, at)), Some(l)) => format!(
            "finite horizon n=1..{horizon}: max gcd ratio {} at n={at}, final gcd ratio {}, equal periods at {equal} stages",
            format_rational(&m),
            format_rational(&l)
        ),
        _ => "no stages in range".to_string(),
    }
}

/// Whether `limsup gcd ratio >= 3*delta`; decided exactly for affine pairs,
/// otherwise over stages `1..=horizon`.
pub fn nonapproach_condition(s1: &Schedule, s2: &Schedule, delta: &Rational, horizon: u64) -> Result<bool> {
    let threshold = delta * int(3);
    if let Some(l) = limsup_gcd_ratio(s1, s2) {
        return Ok(l >= threshold);
    }
    let end = [Some(horizon), s1.horizon(), s2.horizon()].into_iter().flatten().min().unwrap_or(horizon);
    for n in 1..=end {
        if gcd_ratio(s1, s2, n)? >= threshold {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn s(text: &str) -> Schedule {
        Schedule::parse(text).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(s("n"), Schedule::Affine { slope: 1, offset: 0 });
        assert_eq!(s("n+1"), Schedule::Affine { slope: 1, offset: 1 });
        assert_eq!(s("2*n+2"), Schedule::Affine { slope: 2, offset: 2 });
        assert_eq!(s("2n - 1"), Schedule::Affine { slope: 2, offset: -1 });
        assert_eq!(s("7"), Schedule::Affine { slope: 0, offset: 7 });
        assert_eq!(s("[3, 4,5]"), Schedule::Explicit(vec![3, 4, 5]));
        assert!(Schedule::parse("n-1").is_err());
        assert!(Schedule::parse("[0,1]").is_err());
        assert!(Schedule::parse("x").is_err());
        assert_eq!(s("2*n-1").to_string(), "2*n-1");
        assert_eq!(s("1*n+1").to_string(), "n+1");
        assert_eq!(s("n").to_string(), "n");
        assert_eq!(Schedule::parse(&s("3*n+4").to_string()).unwrap(), s("3*n+4"));
    }

    #[test]
    fn evaluation() {
        assert_eq!(s("2n+2").at(5).unwrap(), 12);
        assert_eq!(s("[3,4]").at(2).unwrap(), 4);
        assert!(s("[3,4]").at(3).is_err());
        assert!(s("n").at(0).is_err());
    }

    #[test]
    fn gcd_ratio_examples() {
        assert_eq!(gcd_ratio(&s("n"), &s("n+1"), 7).unwrap(), ratio(1, 7));
        assert_eq!(gcd_ratio(&s("n"), &s("n"), 11).unwrap(), int(1));
        assert_eq!(gcd_ratio(&s("2n"), &s("2n+2"), 5).unwrap(), ratio(1, 5));
        assert_eq!(gcd_ratio(&s("2n"), &s("2n+2"), 2).unwrap(), ratio(1, 2));
        assert_eq!(gcd_ratio(&s("2n"), &s("4n"), 3).unwrap(), int(1));
    }

    #[test]
    fn classification_examples() {
        let c = classify(&s("n"), &s("n+1"));
        assert_eq!((c.almost_identical, c.almost_coprime, c.eventually_distinct), (Verdict::Yes, Verdict::Yes, Verdict::Yes));
        let c = classify(&s("n"), &s("n"));
        assert_eq!((c.almost_identical, c.almost_coprime, c.eventually_distinct), (Verdict::Yes, Verdict::No, Verdict::No));
        assert_eq!(c.limsup_gcd_ratio, Some(int(1)));
        let c = classify(&s("2n"), &s("2n+2"));
        assert_eq!(c.almost_coprime, Verdict::Yes);
        let c = classify(&s("n"), &s("2n"));
        assert_eq!((c.almost_identical, c.almost_coprime, c.eventually_distinct), (Verdict::No, Verdict::No, Verdict::Yes));
        let c = classify(&s("2n"), &s("3n"));
        assert_eq!(c.limsup_gcd_ratio, Some(ratio(1, 2)));
        let c = classify(&s("[2,3,4]"), &s("n"));
        assert_eq!(c.almost_coprime, Verdict::Unknown);
        assert!(c.witness.contains("n=1..3"));
    }

    #[test]
    fn constant_schedules() {
        assert_eq!(limsup_gcd_ratio(&s("6"), &s("n")), Some(int(1)));
        assert_eq!(limsup_gcd_ratio(&s("6"), &s("2n+1")), Some(ratio(1, 2)));
        assert_eq!(limsup_gcd_ratio(&s("4"), &s("6")), Some(ratio(1, 2)));
        assert_eq!(classify(&s("4"), &s("n")).almost_coprime, Verdict::No);
    }

    #[test]
    fn nonapproach_examples() {
        assert!(nonapproach_condition(&s("n"), &s("n"), &ratio(1, 4), 0).unwrap());
        assert!(!nonapproach_condition(&s("n"), &s("n+1"), &ratio(1, 1000), 0).unwrap());
        assert!(nonapproach_condition(&s("2n"), &s("4n"), &ratio(1, 6), 0).unwrap());
        assert!(nonapproach_condition(&s("[4,6,8]"), &s("[4,7,9]"), &ratio(1, 3), 10).unwrap());
        assert!(!nonapproach_condition(&s("[5,6,8]"), &s("[4,7,9]"), &ratio(1, 3), 10).unwrap());
    }
}
