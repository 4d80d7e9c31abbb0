use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by the library.
#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    ParameterDomain(&'static str),
    /// The requested computation route cannot evaluate these inputs;
    /// callers should switch to a closed-form route instead.
    RouteUnavailable(&'static str),
    /// Tabulated rational closed forms exist only for orders 2..=6.
    UnsupportedOrder(u32),
    /// The fit window is degenerate or not contained in the series.
    FitWindow(&'static str),
    /// A series does not cover the requested order.
    Coverage { needed: u32, available: u32 },
    /// The geometric tail diverges (`Nc·S >= 1`); only the exact finite-N
    /// distribution is meaningful in this regime.
    DivergentRegime { nc_s: f64 },
    /// `g²(0)` is undefined for a distribution whose mean is zero.
    UndefinedCoherence,
    /// No transition crossing was found inside the scan range.
    ScanRange { lo: f64, hi: f64 },
    /// Too few Monte Carlo samples for a meaningful standard error.
    StatisticalPower { samples: u64, minimum: u64 },
    /// An internal numerical invariant was violated.
    InternalInvariant(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParameterDomain(what) => write!(f, "parameter outside domain: {what}"),
            Error::RouteUnavailable(what) => write!(f, "route unavailable: {what}"),
            Error::UnsupportedOrder(n) => {
                write!(f, "no tabulated closed form for order n = {n} (supported: 2..=6)")
            }
            Error::FitWindow(what) => write!(f, "invalid fit window: {what}"),
            Error::Coverage { needed, available } => write!(
                f,
                "series covers orders up to {available} but order {needed} was requested"
            ),
            Error::DivergentRegime { nc_s } => {
                write!(f, "geometric form diverges: Nc*S = {nc_s} >= 1")
            }
            Error::UndefinedCoherence => write!(f, "g2(0) undefined: mean photon number is zero"),
            Error::ScanRange { lo, hi } => {
                write!(f, "no transition crossing found in Nc range [{lo}, {hi}]")
            }
            Error::StatisticalPower { samples, minimum } => {
                write!(f, "{samples} samples below the minimum of {minimum}")
            }
            Error::InternalInvariant(what) => write!(f, "internal invariant violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
