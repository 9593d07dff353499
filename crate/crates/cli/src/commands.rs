use std::fs;
use std::io::Write;

use num::Signed;
use unfolding_core::automata::{to_strategy, Machine};
use unfolding_core::counterpoint::{
    best_deviation_melody, bundle_folding, max_unfolding_deviation, unfolding_deviation_gain, unfolding_payoff,
};
use unfolding_core::game::{epsilon0_estimate, solve_ne};
use unfolding_core::melody::{convergence_record, equilibrium_sequence, ConvergenceRecord};
use unfolding_core::rational::{int, parse_rational, ratio};
use unfolding_core::scan::{flexible_scan, melody_pairs, scan_pairs};
use unfolding_core::schedule::{classify as classify_pair, gcd_ratio, nonapproach_condition};
use unfolding_core::{
    MixedProfile, MixedStrategy, NormalFormGame, PeriodicProfile, Player, Rational, Schedule,
};

use crate::report::{f, num_den, q, Fields, Table};
use crate::{
    emit, load_game, AutomatonArgs, ClassifyArgs, CliError, ConvergeArgs, EvalArgs, FlexibleArgs, NonapproachArgs,
};

fn weights(s: &MixedStrategy) -> String {
    s.weights().iter().map(q).collect::<Vec<_>>().join(",")
}

fn target_profile(game: &NormalFormGame, sigma: Option<&str>) -> Result<MixedProfile, CliError> {
    match sigma {
        Some(s) => Ok(MixedProfile::parse(s)?),
        None => solve_ne(game)?
            .into_iter()
            .next()
            .ok_or_else(|| CliError::Config("no equilibrium found; pass --sigma".into())),
    }
}

pub fn converge_table(records: &[ConvergenceRecord]) -> Table {
    let mut t = Table::new([
        "n",
        "tau1",
        "tau2",
        "epsilon_num",
        "epsilon_den",
        "fold_dist_num",
        "fold_dist_den",
        "u1",
        "u2",
        "bundle_dist_num",
        "bundle_dist_den",
        "epsilon_approx",
        "fold_dist_approx",
    ]);
    for r in records {
        let [en, ed] = num_den(&r.epsilon);
        let [fnum, fden] = num_den(&r.fold_distance);
        let [bn, bd] = num_den(&r.bundle_distance);
        t.push(vec![
            r.n.to_string(),
            r.tau1.to_string(),
            r.tau2.to_string(),
            en,
            ed,
            fnum,
            fden,
            q(&r.payoffs.0),
            q(&r.payoffs.1),
            bn,
            bd,
            f(&r.epsilon),
            f(&r.fold_distance),
        ]);
    }
    t
}

pub fn converge(a: &ConvergeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let game = load_game(&a.game)?;
    let sigma = target_profile(&game, a.sigma.as_deref())?;
    let (s1, s2) = (Schedule::parse(&a.sched1)?, Schedule::parse(&a.sched2)?);
    let records = equilibrium_sequence(&game, &sigma, &s1, &s2, a.from, a.to)?;
    let table = converge_table(&records);
    emit(&a.output, out, |fmt, w| table.write(fmt, w))?;

    let tail = &records[records.len() - (records.len() / 10).max(1)..];
    let worst = tail.iter().max_by(|x, y| x.epsilon.cmp(&y.epsilon)).expect("non-empty range");
    writeln!(
        err,
        "target {sigma}; max epsilon over n={}..{} is {} (~{}) at n={}",
        tail[0].n,
        tail[tail.len() - 1].n,
        q(&worst.epsilon),
        f(&worst.epsilon),
        worst.n
    )?;
    Ok(())
}

/// Every positive bundle weight of each player is at least `rho / tau_i`.
fn components_resolved(p: &PeriodicProfile<'_>) -> bool {
    let bf = bundle_folding(p);
    Player::BOTH.into_iter().all(|player| {
        let floor = Rational::new(bf.rho.into(), p.period(player).into());
        bf.min_nonzero_component(player) >= floor
    })
}

pub fn nonapproach(a: &NonapproachArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let delta = parse_rational(&a.delta)?;
    let game = NormalFormGame::modified_matching_pennies(&delta)?;
    let bound = epsilon0_estimate(&delta, &delta)? / int(2);
    let side = MixedStrategy::new(vec![delta.clone(), int(1) - &delta])?;
    let sigma = MixedProfile::new(side.clone(), side);
    let (s1, s2) = (Schedule::parse(&a.sched1)?, Schedule::parse(&a.sched2)?);
    if a.from == 0 || a.from > a.cap {
        return Err(CliError::Config(format!("empty stage range {}..={}", a.from, a.cap)));
    }
    let threshold = &delta * int(3);
    let mut periods = Vec::new();
    for n in a.from..=a.cap {
        let (t1, t2) = (s1.at(n)? as usize, s2.at(n)? as usize);
        let size = 2u128.checked_pow((t1 + t2) as u32).unwrap_or(u128::MAX);
        if size > a.max_profiles {
            return Err(CliError::Limit(format!(
                "stage {n} has {size} melody pairs, above --max-profiles {}",
                a.max_profiles
            )));
        }
        periods.push((n, t1, t2));
    }

    let mut t = Table::new([
        "n",
        "tau1",
        "tau2",
        "gcd_ratio",
        "condition",
        "min_f_num",
        "min_f_den",
        "argmin_s1",
        "argmin_s2",
        "components_ok",
        "bound",
        "simple_epsilon",
        "min_f_approx",
    ]);
    let mut failures = Vec::new();
    let mut certified: Option<Rational> = None;
    let acts = |p: Player| game.actions(p).to_vec();
    for (n, t1, t2) in periods {
        let ratio_n = gcd_ratio(&s1, &s2, n)?;
        let applies = ratio_n >= threshold;
        let pairs = melody_pairs(&game, t1, t2, a.max_profiles)?;
        let results = scan_pairs(&game, pairs.clone(), |p| (max_unfolding_deviation(p), components_resolved(p)));
        let comps_ok = results.iter().all(|r| r.1);
        let (i, min_f) = results
            .into_iter()
            .map(|r| r.0)
            .enumerate()
            .reduce(|b, c| if c.1 < b.1 { c } else { b })
            .expect("at least one pair");
        let simple = convergence_record(&game, &sigma, &s1, &s2, n).map(|r| q(&r.epsilon)).unwrap_or_default();
        if applies && min_f < bound {
            failures.push(format!("n={n}: min f {} below bound {}", q(&min_f), q(&bound)));
        }
        if !comps_ok {
            failures.push(format!("n={n}: a bundle component falls below rho/tau"));
        }
        if applies && certified.as_ref().is_none_or(|c| &min_f < c) {
            certified = Some(min_f.clone());
        }
        let [mn, md] = num_den(&min_f);
        t.push(vec![
            n.to_string(),
            t1.to_string(),
            t2.to_string(),
            q(&ratio_n),
            applies.to_string(),
            mn,
            md,
            pairs[i].0.format(&acts(Player::One)),
            pairs[i].1.format(&acts(Player::Two)),
            comps_ok.to_string(),
            q(&bound),
            simple,
            f(&min_f),
        ]);
    }
    emit(&a.output, out, |fmt, w| t.write(fmt, w))?;
    match &certified {
        Some(m) => writeln!(err, "G_{}: min f where gcd ratio >= {} is {}; certified bound {}", q(&delta), q(&threshold), q(m), q(&bound))?,
        None => writeln!(err, "G_{}: no stage with gcd ratio >= {}; nothing asserted", q(&delta), q(&threshold))?,
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Assertion(failures.join("; ")))
    }
}

pub fn flexible(a: &FlexibleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let game = load_game(&a.game)?;
    if a.cap == 0 {
        return Err(CliError::Config("cap must be positive".into()));
    }
    let rows = flexible_scan(&game, a.cap, a.max_profiles)?;
    let (a1, a2) = (game.actions(Player::One), game.actions(Player::Two));
    let mut t = Table::new([
        "s1",
        "s2",
        "epsilon_num",
        "epsilon_den",
        "deviator",
        "best_period",
        "tactic",
        "tactic_player",
        "tactic_melody",
        "tactic_gain",
        "epsilon_approx",
    ]);
    for r in &rows {
        let [en, ed] = num_den(&r.epsilon);
        let (tac, who, mel, gain) = match &r.tactic {
            Some(x) => (
                x.tactic.to_string(),
                x.deviator.to_string(),
                x.melody.format(game.actions(x.deviator)),
                q(&x.gain),
            ),
            None => Default::default(),
        };
        t.push(vec![
            r.m1.format(a1),
            r.m2.format(a2),
            en,
            ed,
            r.deviator.to_string(),
            r.best_period.to_string(),
            tac,
            who,
            mel,
            gain,
            f(&r.epsilon),
        ]);
    }
    emit(&a.output, out, |fmt, w| t.write(fmt, w))?;

    let min = rows.iter().min_by(|x, y| x.epsilon.cmp(&y.epsilon)).expect("cap >= 1");
    let floor = ratio(1, 3);
    let is_mp = game == NormalFormGame::matching_pennies();
    writeln!(
        err,
        "{} profiles with periods <= {}: min flexible epsilon {} at {} vs {}{}",
        rows.len(),
        a.cap,
        q(&min.epsilon),
        min.m1.format(a1),
        min.m2.format(a2),
        if is_mp { format!("; floor 1/3 {}", if min.epsilon >= floor { "holds" } else { "VIOLATED" }) } else { String::new() }
    )?;
    if is_mp && min.epsilon < floor {
        return Err(CliError::Assertion(format!("flexible epsilon {} below 1/3", q(&min.epsilon))));
    }
    Ok(())
}

/// Longest stream compared against direct simulation.
const STREAM_CHECK_CAP: usize = 100_000;

pub fn automaton(a: &AutomatonArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(&a.machine)
        .map_err(|e| CliError::Config(format!("cannot read machine {}: {e}", a.machine.display())))?;
    let machine = Machine::from_json(&text)?;
    let game = load_game(&a.game)?;
    let player = Player::from_number(a.player)?;
    let run = machine.run(a.cap)?;
    let strategy = to_strategy(&run.output, game.actions(player))?;

    let within = run.output.len() <= run.states && (run.output.len() as u128) <= run.state_bound;
    let len = (5 * run.states).min(STREAM_CHECK_CAP);
    let stream_ok = machine.simulate(len)? == run.output.stream(len);

    let mut fl = Fields::default();
    fl.add("strategy", strategy.format(game.actions(player)));
    fl.add("prefix_len", run.output.prefix.len().to_string());
    fl.add("period_len", run.output.period.len().to_string());
    fl.add("automaton_states", run.states.to_string());
    fl.add("state_bound", run.state_bound.to_string());
    fl.add("within_bound", within.to_string());
    fl.add("stream_check_steps", len.to_string());
    fl.add("stream_matches", stream_ok.to_string());
    emit(&a.output, out, |fmt, w| fl.write(fmt, w))?;
    writeln!(
        err,
        "|prefix| = {}, |period| = {}, {} automaton states (bound {}): {}",
        run.output.prefix.len(),
        run.output.period.len(),
        run.states,
        run.state_bound,
        if within && stream_ok { "ok" } else { "CHECK FAILED" }
    )?;
    if !within {
        return Err(CliError::Assertion("detected prefix and period exceed the state bound".into()));
    }
    if !stream_ok {
        return Err(CliError::Assertion("detected stream differs from direct simulation".into()));
    }
    Ok(())
}

pub fn eval_fields(game: &NormalFormGame, s1: &str, s2: &str, cap: u64) -> Result<(Fields, bool), CliError> {
    let p = PeriodicProfile::parse(game, s1, s2)?;
    let (a1, a2) = (game.actions(Player::One), game.actions(Player::Two));
    let fold = p.fold();
    let (u1, u2) = unfolding_payoff(&p);
    let g1 = unfolding_deviation_gain(&p, Player::One);
    let g2 = unfolding_deviation_gain(&p, Player::Two);
    let bf = bundle_folding(&p);

    let mut fl = Fields::default();
    fl.add("s1", p.s1.format(a1));
    fl.add("s2", p.s2.format(a2));
    fl.add("tau1", p.period(Player::One).to_string());
    fl.add("tau2", p.period(Player::Two).to_string());
    fl.add("fold1", weights(&fold.p1));
    fl.add("fold2", weights(&fold.p2));
    fl.add("u1", q(&u1));
    fl.add("u2", q(&u2));
    fl.add("gain1", q(&g1));
    fl.add("gain2", q(&g2));
    fl.add("f", q(&g1.clone().max(g2.clone())));
    fl.add("best_deviation1", best_deviation_melody(&p, Player::One).format(a1));
    fl.add("best_deviation2", best_deviation_melody(&p, Player::Two).format(a2));
    fl.add("rho", bf.rho.to_string());
    for (j, mu) in bf.bundle_profiles.iter().enumerate() {
        fl.add(format!("mu{}", j + 1), format!("{};{}", weights(&mu.p1), weights(&mu.p2)));
    }
    let mut consistent = true;
    match p.avg_payoff_direct(cap as u128) {
        Ok((d1, d2)) => {
            consistent = d1 == u1 && d2 == u2;
            fl.add("direct_check", if consistent { "match" } else { "MISMATCH" });
        }
        Err(unfolding_core::Error::LimitExceeded { size, .. }) => {
            fl.add("direct_check", format!("skipped (piece of {size} rounds exceeds cap)"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok((fl, consistent))
}

pub fn eval(a: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let game = load_game(&a.game)?;
    let (fl, consistent) = eval_fields(&game, &a.s1, &a.s2, a.cap)?;
    emit(&a.output, out, |fmt, w| fl.write(fmt, w))?;
    writeln!(
        err,
        "{} vs {}: payoffs ({}, {}), f = {}",
        fl.get("s1").unwrap_or_default(),
        fl.get("s2").unwrap_or_default(),
        fl.get("u1").unwrap_or_default(),
        fl.get("u2").unwrap_or_default(),
        fl.get("f").unwrap_or_default()
    )?;
    if !consistent {
        return Err(CliError::Assertion("closed form disagrees with direct enumeration".into()));
    }
    Ok(())
}

pub fn classify(a: &ClassifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let (s1, s2) = (Schedule::parse(&a.sched1)?, Schedule::parse(&a.sched2)?);
    let c = classify_pair(&s1, &s2);
    let mut fl = Fields::default();
    fl.add("sched1", s1.to_string());
    fl.add("sched2", s2.to_string());
    fl.add("almost_identical", c.almost_identical.to_string());
    fl.add("almost_coprime", c.almost_coprime.to_string());
    fl.add("eventually_distinct", c.eventually_distinct.to_string());
    fl.add("limsup_gcd_ratio", c.limsup_gcd_ratio.as_ref().map(q).unwrap_or_else(|| "unknown".into()));
    fl.add("witness", c.witness.clone());
    if let Some(n) = a.n {
        fl.add("n", n.to_string());
        fl.add("gcd_ratio", q(&gcd_ratio(&s1, &s2, n)?));
    }
    if let Some(d) = &a.delta {
        let delta = parse_rational(d)?;
        if !delta.is_positive() {
            return Err(CliError::Config(format!("delta must be positive, got {d}")));
        }
        fl.add("delta", q(&delta));
        fl.add("nonapproach_condition", nonapproach_condition(&s1, &s2, &delta, a.horizon)?.to_string());
    }
    emit(&a.output, out, |fmt, w| fl.write(fmt, w))?;
    writeln!(
        err,
        "{} vs {}: almost identical {}, almost coprime {}, eventually distinct {}",
        s1, s2, c.almost_identical, c.almost_coprime, c.eventually_distinct
    )?;
    Ok(())
}
