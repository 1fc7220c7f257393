//! Command-line front end: reads a monoid presentation, runs constructions,
//! theorem checks and diagram comparisons, and prints a report.
//!
//! Exit codes: 0 when every verdict passes, 1 on a failure or divergence,
//! 2 on an input error, 3 when something stayed undecided.

pub mod commands;
pub mod presentation;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use embedkit::{Bounds, RelationMode};

pub use presentation::{parse_presentation, Body, ParseError, Presentation, SyntaxError};
pub use report::{Finding, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "embedkit", version, about = "Canonical embeddings of commutative monoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Presentation file (`-` for stdin).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// `literal` or `saturated`.
    #[arg(long, global = true, default_value = "saturated", value_parser = parse_mode)]
    pub mode: RelationMode,

    /// Bound for existential searches.
    #[arg(long, global = true, default_value_t = 64)]
    pub bound: usize,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Flags, predicates and Grothendieck group of the input.
    Info,
    /// Apply a path of constructions, e.g. `--path R,F`.
    Apply {
        #[arg(long)]
        path: String,
    },
    /// Check a theorem (4.1 to 4.5) or the distinct-multiples claim (p2.1).
    Check {
        #[arg(long)]
        theorem: String,
        /// Apply this path first and check on its target.
        #[arg(long)]
        path: Option<String>,
        /// Pairs sampled on infinite monoids.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// List typed paths between two categories.
    Paths {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Compare every pair of paths out of the input.
    Diagram {
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 3)]
        expr_size: usize,
        /// Expression pairs per comparison.
        #[arg(long, default_value_t = 500)]
        pairs: usize,
    },
}

fn parse_mode(s: &str) -> Result<RelationMode, String> {
    s.parse().map_err(|e: embedkit::Error| e.to_string())
}

impl Cli {
    pub fn bounds(&self) -> Bounds {
        Bounds { search: self.bound, ..Bounds::default() }
    }
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parses arguments (the first is the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(report) => {
            let stdout = if cli.json { report.to_json() } else { report.to_text() };
            Output { code: report.exit_code, stdout, stderr: String::new() }
        }
        Err(e) => Output::input_error(e),
    }
}
