//! Command-line experiments over unfolding games.
//!
//! [`run`] executes a parsed [`Cli`] against arbitrary writers so that the
//! binary and the tests share one code path. Primary output goes to `--out`
//! (or `out`), one-line summaries to `err`.

pub mod commands;
pub mod report;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use unfolding_core::rational::parse_rational;
use unfolding_core::scan::DEFAULT_SCAN_LIMIT;
use unfolding_core::{Error, NormalFormGame};

pub use report::{Fields, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "unfolding", version, about = "Exact experiments on unfolding games with periodic strategies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Equilibrium sequence built from simple melodies, one row per stage.
    Converge(ConvergeArgs),
    /// Exhaustive minimum deviation gain in G_delta at each stage.
    Nonapproach(NonapproachArgs),
    /// Flexible epsilon of every profile with periods up to the cap.
    Flexible(FlexibleArgs),
    /// Eventually periodic output of a Moore or bounded-tape Turing machine.
    Automaton(AutomatonArgs),
    /// Payoffs, foldings and deviation gains of one periodic profile.
    Eval(EvalArgs),
    /// Number-theoretic classification of a schedule pair.
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    /// `mp`, `gdelta:p/q`, or a game JSON file.
    #[arg(long, default_value = "mp")]
    pub game: String,
    /// Target equilibrium, e.g. `1/2,1/2;1/2,1/2`; solved for when omitted.
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long, default_value = "n")]
    pub sched1: String,
    #[arg(long, default_value = "n+1")]
    pub sched2: String,
    #[arg(long, default_value_t = 2)]
    pub from: u64,
    #[arg(long, default_value_t = 200)]
    pub to: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NonapproachArgs {
    #[arg(long, default_value = "1/4")]
    pub delta: String,
    #[arg(long, default_value = "n")]
    pub sched1: String,
    #[arg(long, default_value = "n")]
    pub sched2: String,
    #[arg(long, default_value_t = 1)]
    pub from: u64,
    /// Last stage to enumerate exhaustively.
    #[arg(long, default_value_t = 4)]
    pub cap: u64,
    /// Largest number of melody pairs enumerated at one stage.
    #[arg(long, default_value_t = DEFAULT_SCAN_LIMIT)]
    pub max_profiles: u128,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FlexibleArgs {
    #[arg(long, default_value = "mp")]
    pub game: String,
    /// Largest period enumerated for either player.
    #[arg(long, default_value_t = 5)]
    pub cap: usize,
    /// Largest number of profiles enumerated.
    #[arg(long, default_value_t = DEFAULT_SCAN_LIMIT)]
    pub max_profiles: u128,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct AutomatonArgs {
    /// Machine description (JSON with `"kind": "moore"` or `"tm"`).
    #[arg(long)]
    pub machine: PathBuf,
    /// Game whose action list the outputs are mapped onto.
    #[arg(long, default_value = "mp")]
    pub game: String,
    #[arg(long, default_value_t = 1)]
    pub player: usize,
    /// Largest number of reachable configurations explored.
    #[arg(long, default_value_t = unfolding_core::automata::DEFAULT_CONFIG_LIMIT)]
    pub cap: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long, default_value = "mp")]
    pub game: String,
    /// Strategy literal `prefix;melody`, e.g. `;HT` or `H;TT`.
    #[arg(long, allow_hyphen_values = true)]
    pub s1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub s2: String,
    /// Longest piece walked for the direct cross-check.
    #[arg(long, default_value_t = unfolding_core::sequence::DEFAULT_PIECE_LIMIT as u64)]
    pub cap: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub sched1: String,
    #[arg(long)]
    pub sched2: String,
    /// Stage for a spot value of the gcd ratio.
    #[arg(long)]
    pub n: Option<u64>,
    /// Also decide the non-approachability condition for this delta.
    #[arg(long)]
    pub delta: Option<String>,
    /// Horizon for finite-data reports.
    #[arg(long, default_value_t = 100)]
    pub horizon: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
pub enum CliError {
    /// A checked floor or cross-check failed.
    Assertion(String),
    Config(String),
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Assertion(_) => 1,
            CliError::Config(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Assertion(m) => write!(f, "assertion failed: {m}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Limit(m) => write!(f, "resource limit: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded { .. } | Error::GameTooLarge { .. } => CliError::Limit(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o: {e}"))
    }
}

/// `mp`, `matching-pennies`, `gdelta:p/q`, or a path to a game file.
pub fn load_game(source: &str) -> Result<NormalFormGame, CliError> {
    match source {
        "mp" | "matching-pennies" => Ok(NormalFormGame::matching_pennies()),
        s if s.starts_with("gdelta:") => {
            let delta = parse_rational(&s["gdelta:".len()..])?;
            Ok(NormalFormGame::modified_matching_pennies(&delta)?)
        }
        path => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read game {path:?}: {e}")))?;
            Ok(NormalFormGame::from_json(&text)?)
        }
    }
}

pub(crate) fn emit(
    output: &OutputArgs,
    out: &mut dyn Write,
    write: impl FnOnce(Format, &mut dyn Write) -> std::io::Result<()>,
) -> Result<(), CliError> {
    match &output.out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| CliError::Config(format!("cannot create {}: {e}", path.display())))?;
            write(output.format, &mut file)?;
        }
        None => write(output.format, out)?,
    }
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Converge(a) => commands::converge(&a, out, err),
        Command::Nonapproach(a) => commands::nonapproach(&a, out, err),
        Command::Flexible(a) => commands::flexible(&a, out, err),
        Command::Automaton(a) => commands::automaton(&a, out, err),
        Command::Eval(a) => commands::eval(&a, out, err),
        Command::Classify(a) => commands::classify(&a, out, err),
    }
}
