//! Command implementations behind the `tropgen` binary. Every command
//! returns an [`Outcome`] so the same code serves the binary and the tests.

pub mod commands;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tropgen::Error;

/// Exit codes shared by all commands.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const IMPROPER: i32 = 3;
    pub const DISAGREEMENT: i32 = 4;
    pub const BUDGET: i32 = 5;
}

pub const DEFAULT_BUDGET: usize = 200;

#[derive(Debug, Parser)]
#[command(name = "tropgen", version, about = "Tropical varieties and generic tropical fans of graded ideals")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Independent random transforms per check
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Initial coefficient bound for random transforms
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(i64).range(1..))]
    pub bound: i64,
    /// Grid radius for membership maps
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
    pub grid: i64,
    /// Emit JSON instead of the text summary
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to a file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock time in the output (breaks byte-identical reruns)
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Default for Global {
    fn default() -> Self {
        Global { seed: 1, trials: 3, bound: 50, grid: 3, json: false, out: None, timing: false }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Krull dimension of an ideal or matrix file
    Dim { file: PathBuf },
    /// Whether a weight lies in the tropical variety of the ideal itself
    Member {
        file: PathBuf,
        /// Comma-separated weight, e.g. -1,0,0
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Generic tropical variety on a grid, with skeleton, symmetry and lineality verdicts
    Generic {
        file: PathBuf,
        /// Pin the first coordinate to 0 (skips the symmetry check)
        #[arg(long)]
        reduced_grid: bool,
    },
    /// Polyhedral fans
    #[command(subcommand)]
    Fan(FanCommand),
    /// Closed-form checks for an ideal generated by linear forms
    Linear { file: PathBuf },
    /// Closed-form checks for a principal ideal
    Principal { file: PathBuf },
    /// Run every campaign over a corpus directory
    VerifyCorpus { dir: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum FanCommand {
    /// The generic tropical fan W_n or one of its skeletons
    Wn {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
        n: u64,
        #[arg(long)]
        skeleton: Option<usize>,
    },
    /// Maximal Groebner cones by facet flipping (budget from TROPGEN_BUDGET)
    Groebner { file: PathBuf },
}

/// Result of a command: exit code, human summary, and the JSON contract.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
    /// The command could not run at all.
    pub is_error: bool,
}

impl Outcome {
    pub fn new(code: i32, text: String, json: Value) -> Self {
        Outcome { code, text, json, is_error: false }
    }

    pub fn from_error(e: &Error) -> Self {
        let code = error_code(e);
        let json = json!({ "error": e.to_string(), "exit_code": code });
        Outcome { code, text: format!("error: {e}"), json, is_error: true }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
            s.push('\n');
            s
        } else {
            let mut s = self.text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}

pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Input { source, .. } => error_code(source),
        Error::ImproperIdeal => exit::IMPROPER,
        Error::PersistentDisagreement { .. } => exit::DISAGREEMENT,
        Error::BudgetExceeded(_) => exit::BUDGET,
        _ => exit::INPUT,
    }
}

/// Cone budget for fan enumeration: `TROPGEN_BUDGET` or the default.
pub fn budget_from_env() -> usize {
    std::env::var("TROPGEN_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

pub fn run(cli: &Cli) -> Outcome {
    let start = std::time::Instant::now();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Dim { file } => commands::cmd_dim(file),
        Command::Member { file, weight } => commands::cmd_member(file, weight),
        Command::Generic { file, reduced_grid } => commands::cmd_generic(g, file, !reduced_grid),
        Command::Fan(FanCommand::Wn { n, skeleton }) => commands::cmd_fan_wn(*n as usize, *skeleton),
        Command::Fan(FanCommand::Groebner { file }) => commands::cmd_fan_groebner(file, budget_from_env()),
        Command::Linear { file } => commands::cmd_linear(g, file),
        Command::Principal { file } => commands::cmd_principal(g, file),
        Command::VerifyCorpus { dir } => verify::cmd_verify_corpus(g, dir),
    };
    let mut outcome = result.unwrap_or_else(|e| Outcome::from_error(&e));
    if g.timing {
        let ms = start.elapsed().as_millis() as u64;
        if let Value::Object(map) = &mut outcome.json {
            map.insert("elapsed_ms".into(), json!(ms));
        }
        outcome.text.push_str(&format!("\nelapsed: {ms} ms"));
    }
    outcome
}
