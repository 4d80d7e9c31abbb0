//! Command-line front end over `photonstat-core`.
//!
//! Every subcommand writes CSV files (the data contract) and, with `--svg`,
//! standalone SVG figures into the output directory. Identical
//! configuration and seed produce byte-identical CSV output.

use std::fmt;

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;
pub mod svg;

pub use config::RunConfig;

/// CLI failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid flags or config file (exit 2).
    Config(String),
    /// A computation rejected its inputs (exit 3).
    Domain(String),
    /// Filesystem failure (exit 4).
    Io(String),
    /// A built-in cross-check failed, e.g. route disagreement in `table1`
    /// (exit 5).
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
            CliError::Check(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::Domain(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Check(msg) => write!(f, "check failed: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<photonstat_core::Error> for CliError {
    fn from(err: photonstat_core::Error) -> Self {
        CliError::Domain(err.to_string())
    }
}

/// Dispatches a parsed command line.
pub fn run(cli: &cli::Cli) -> Result<(), CliError> {
    let kind = cli.command.kind();
    let cfg = config::resolve(cli.command.args(), kind)?;
    match kind {
        cli::CommandKind::Table1 => commands::table1(&cfg),
        cli::CommandKind::KnCurve => commands::kn_curve(&cfg),
        cli::CommandKind::BunchingCurve => commands::bunching_curve(&cfg),
        cli::CommandKind::Fit => commands::fit(&cfg),
        cli::CommandKind::G2Scan => commands::g2_scan(&cfg),
        cli::CommandKind::NbarScan => commands::nbar_scan(&cfg),
        cli::CommandKind::MbeCompare => commands::mbe_compare(&cfg),
        cli::CommandKind::McValidate => commands::mc_validate(&cfg),
        cli::CommandKind::Transition => commands::transition(&cfg),
    }
}
