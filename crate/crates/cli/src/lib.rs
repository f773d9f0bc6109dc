//! JSON batch front-end: argument parsing, dispatch and exit codes.
//!
//! Exit status is 0 when every check of the report holds, 1 when a check
//! fails (the report says which) and 2 for unreadable or malformed input.

mod commands;
pub mod input;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use relpres_core::diagram::DiagramError;
use relpres_core::presentation::PresentationError;
use relpres_core::small_cancellation::ScError;
use relpres_core::up::UpError;
use relpres_core::word::WordError;

#[derive(Debug, Parser)]
#[command(name = "relpres", version, about = "Checks for one-relator relative presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unimodularity, case split, coset form and hypothesis report.
    Analyze {
        input: PathBuf,
        /// Factors whose free product with ⟨t⟩ the relator must not be conjugate into.
        #[arg(long, value_delimiter = ',')]
        subfamily: Option<Vec<String>>,
        /// The free generator playing the role of t.
        #[arg(long)]
        gen: Option<String>,
    },
    /// Pieces and the C′(λ) condition for a relator list or a built-in family.
    ScCheck {
        /// Relator list; omit when --family is given.
        input: Option<PathBuf>,
        /// λ as "p/q".
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum)]
        family: Option<FamilyKind>,
        /// Number of coefficient factors per block (distinct-blocks).
        #[arg(long)]
        l: Option<usize>,
        /// Blocks per relator (distinct-blocks).
        #[arg(long = "J")]
        j: Option<usize>,
        /// Blocks per relator (shared-letter).
        #[arg(long)]
        blocks: Option<usize>,
        /// Number of relators.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Unique and strong unique products of two finite subsets.
    UpCheck { input: PathBuf },
    /// The unique-minimum/maximum conditions on a family of subsets.
    OmegaCheck { input: PathBuf },
    /// Howie diagram checks.
    Diagram {
        #[command(subcommand)]
        action: DiagramAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// Every block symbol distinct; parameters --l, --J, --count.
    DistinctBlocks,
    /// One letter shared by all relators; parameters --blocks, --count.
    SharedLetter,
}

#[derive(Debug, Subcommand)]
pub enum DiagramAction {
    /// Sphericity, templates and interior vertex labels.
    Validate { input: PathBuf },
    /// Runs the cars for one period and reports collisions.
    Simulate { input: PathBuf },
    /// Checks the direction parity of every schedule.
    Parity { input: PathBuf },
    /// Reports reducedness, or merges the two faces across `--edge`.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        edge: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid input at \"{pointer}\": {message}")]
    Json { pointer: String, message: String },
    #[error("{class}: {message}")]
    Input { class: &'static str, message: String },
}

impl CliError {
    pub fn from_word(e: WordError) -> CliError {
        match e {
            WordError::Json { pointer, message } => CliError::Json { pointer, message },
            other => CliError::Input {
                class: "Word",
                message: other.to_string(),
            },
        }
    }

    fn input(class: &'static str, e: impl std::fmt::Display) -> CliError {
        CliError::Input {
            class,
            message: e.to_string(),
        }
    }

    pub fn report(&self) -> Value {
        let (class, pointer) = match self {
            CliError::Io { .. } => ("Io", None),
            CliError::Json { pointer, .. } => ("Schema", Some(pointer.clone())),
            CliError::Input { class, .. } => (*class, None),
        };
        let message = match self {
            CliError::Json { message, .. } | CliError::Input { message, .. } => message.clone(),
            CliError::Io { .. } => self.to_string(),
        };
        json!({"error": {"class": class, "pointer": pointer, "message": message}})
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::Word(w) => CliError::from_word(w),
            other => CliError::input("Presentation", other),
        }
    }
}

impl From<ScError> for CliError {
    fn from(e: ScError) -> Self {
        match e {
            ScError::Word(w) => CliError::from_word(w),
            other => CliError::input("SmallCancellation", other),
        }
    }
}

impl From<UpError> for CliError {
    fn from(e: UpError) -> Self {
        CliError::input("UniqueProduct", e)
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Schema { pointer, message } => CliError::Json { pointer, message },
            other => CliError::input(other.class(), other),
        }
    }
}

/// A finished run: the exit status and the JSON report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn checked(ok: bool, report: Value) -> Outcome {
        Outcome {
            code: if ok { 0 } else { 1 },
            report,
        }
    }

    /// Pretty JSON with a trailing newline. Object keys are sorted.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Analyze { input, subfamily, gen } => commands::analyze(input, subfamily.as_deref(), gen.as_deref()),
        Command::ScCheck {
            input,
            lambda,
            family,
            l,
            j,
            blocks,
            count,
        } => commands::sc_check(
            input.as_deref(),
            lambda,
            *family,
            commands::FamilyParams {
                l: *l,
                j: *j,
                blocks: *blocks,
                count: *count,
            },
        ),
        Command::UpCheck { input } => commands::up_check(input),
        Command::OmegaCheck { input } => commands::omega_check(input),
        Command::Diagram { action } => commands::diagram(action),
    };
    result.unwrap_or_else(|e| Outcome {
        code: 2,
        report: e.report(),
    })
}
