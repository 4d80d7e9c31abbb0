//! Argument declarations.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "photonstat",
    version,
    about = "Photon-number statistics of partially indistinguishable photons",
    after_help = "Flags override config-file entries, which override built-in defaults \
                  (N = 1000, K = 0.1..1.0 in steps of 0.1, Gaussian spectra)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cross-check the three K_n routes for n = 2..6 (table1.csv)
    Table1(CommonArgs),
    /// K_n versus photon number (kn_curve.csv, fig2a.svg)
    KnCurve(CommonArgs),
    /// Bunching coefficient B_n versus photon number (bunching_curve.csv, fig2c.svg)
    BunchingCurve(CommonArgs),
    /// Exponential-decay fit of K_n and bunching factor S (fit.csv, fig2b.svg)
    Fit(CommonArgs),
    /// Second-order coherence g2(0) over an Nc scan (g2_scan.csv, fig3a.svg)
    G2Scan(CommonArgs),
    /// Mean photon number over an Nc scan (nbar_scan.csv, fig3b.svg)
    NbarScan(CommonArgs),
    /// Exact distribution against the modified Bose-Einstein form (mbe_compare.csv)
    MbeCompare(CommonArgs),
    /// Monte Carlo estimates against the closed form (mc_validate.csv)
    McValidate(CommonArgs),
    /// Transition points of g2(0) against the 1/S prediction (transition.csv)
    Transition(CommonArgs),
}

/// Which command is running; drives per-command defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Table1,
    KnCurve,
    BunchingCurve,
    Fit,
    G2Scan,
    NbarScan,
    MbeCompare,
    McValidate,
    Transition,
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Table1(a)
            | Command::KnCurve(a)
            | Command::BunchingCurve(a)
            | Command::Fit(a)
            | Command::G2Scan(a)
            | Command::NbarScan(a)
            | Command::MbeCompare(a)
            | Command::McValidate(a)
            | Command::Transition(a) => a,
        }
    }

    pub fn kind(&self) -> CommandKind {
        match self {
            Command::Table1(_) => CommandKind::Table1,
            Command::KnCurve(_) => CommandKind::KnCurve,
            Command::BunchingCurve(_) => CommandKind::BunchingCurve,
            Command::Fit(_) => CommandKind::Fit,
            Command::G2Scan(_) => CommandKind::G2Scan,
            Command::NbarScan(_) => CommandKind::NbarScan,
            Command::MbeCompare(_) => CommandKind::MbeCompare,
            Command::McValidate(_) => CommandKind::McValidate,
            Command::Transition(_) => CommandKind::Transition,
        }
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// Comma-separated pairwise indistinguishability values
    #[arg(long = "K", value_name = "LIST")]
    pub k: Option<String>,

    /// Emitter count
    #[arg(long = "N", value_name = "INT")]
    pub n_emitters: Option<u32>,

    /// Largest photon number for curves and tables
    #[arg(long = "n-max", value_name = "INT")]
    pub n_max: Option<u32>,

    /// Logarithmic Nc scan grid
    #[arg(long = "nc-range", value_name = "MIN:MAX:POINTS")]
    pub nc_range: Option<String>,

    /// Window of photon numbers for the decay fit
    #[arg(long = "fit-window", value_name = "LO:HI")]
    pub fit_window: Option<String>,

    /// Monte Carlo sample count
    #[arg(long, value_name = "INT")]
    pub samples: Option<u64>,

    /// Master seed for Monte Carlo streams
    #[arg(long, value_name = "INT")]
    pub seed: Option<u64>,

    /// Single Nc value (mbe-compare)
    #[arg(long, value_name = "REAL")]
    pub nc: Option<f64>,

    /// Output directory for CSV/SVG files
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Also write SVG figures
    #[arg(long)]
    pub svg: bool,

    /// Flat key = value config file ('#' starts a comment)
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}
