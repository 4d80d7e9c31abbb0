//! Photon-number statistics of partially indistinguishable photons.
//!
//! An ensemble of `N` independent emitters, each releasing at most one photon
//! with weight `c`, produces light whose counting statistics interpolate
//! between two classical limits. When the single-photon wavepackets are
//! identical the permutation symmetry of bosons enhances multi-photon events
//! and the photon number follows Bose–Einstein statistics; when the
//! wavepackets are fully distinguishable the enhancement disappears and the
//! distribution is binomial (Poisson for large `N`). This crate computes the
//! quantities that connect the two regimes for a Gaussian spectral model:
//!
//! * [`spectral`] — the n-photon indistinguishability `K_n = tr ρⁿ` by three
//!   independent routes (tabulated rational forms, a circulant eigenvalue
//!   product, and a cyclic tridiagonal determinant), plus the exponential
//!   decay rate `α(K)` and the bunching factor `S = e^(−α)`.
//! * [`combinatorics`] — derangements, rencontres numbers, and the bunching
//!   coefficient `B_n = 1 + Σ_{k=2}^{n} D_{n,n−k} K_k`, with an exact
//!   arbitrary-precision path for small `n` and a log-space path that stays
//!   finite past `n! ≈ 10³⁰⁰`.
//! * [`statistics`] — the exact finite-`N` photon-number distribution
//!   `P_n ∝ C(N,n) B_n cⁿ`, its moments and `g²(0)`, the Bose–Einstein and
//!   modified Bose–Einstein limits, and the statistical transition point
//!   near `Nc = 1/S`.
//! * [`montecarlo`] — a seeded Monte Carlo estimator of `K_n` by direct
//!   sampling of center frequencies, used as a stochastic cross-check of the
//!   analytic routes.
//!
//! The crate is `no_std` (with `alloc`); all float transcendentals go through
//! [`libm`], so results are reproducible across platforms.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod combinatorics;
pub mod error;
mod math;
pub mod montecarlo;
pub mod spectral;
pub mod statistics;

pub use error::{Error, Result};
pub use spectral::{
    bunching_factor, fit_alpha, kn_closed_form, kn_determinant, kn_exact_rational, kn_series,
    kn_table, ln_kn_closed_form, pairwise_indistinguishability, single_photon_overlap, FitResult,
    KSeries, SpectralModel,
};

pub use combinatorics::{
    bunching_coefficient, bunching_series, derangement_count, log_sum_exp, rencontres_number,
    BunchingTable, LogNumber, EXACT_LIMIT,
};

pub use montecarlo::{mc_kn_estimate, sample_center_frequencies, McEstimate};
pub use statistics::{
    bose_einstein, ensemble_distribution, mean_photon_number, modified_bose_einstein,
    second_order_coherence, transition_point, EnsembleParams, PhotonNumberDistribution,
    ThermalPoint, TransitionEstimate,
};
