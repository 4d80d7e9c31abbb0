//! Photon-number statistics of the N-emitter ensemble.
//!
//! Each of `N` emitters contributes a photon with weight `c`, so the exact
//! photon-number distribution is
//!
//! ```text
//! P_n ∝ C(N, n) · B_n · cⁿ ,      n = 0..N ,
//! ```
//!
//! with the bunching coefficient `B_n` supplied by a [`BunchingTable`]. All
//! weights are assembled in log space, so the distribution stays normalized
//! even where `B_n ≈ n!` dwarfs the float range. From the distribution
//! follow the mean photon number, the second-order degree of coherence
//! `g²(0) = ⟨n(n−1)⟩/⟨n⟩²`, and the location of the statistical transition
//! where `g²(0)` falls from `1 + K` toward `1` — approximately at
//! `Nc = 1/S`. The Bose–Einstein limit and its modified form with bunching
//! factor `S` are provided for comparison, together with the thermal
//! parameter mapping `Nc = e^(−ε/k_BT)`.

use alloc::vec::Vec;

use crate::combinatorics::{bunching_series, log_sum_exp, BunchingTable};
use crate::error::{Error, Result};
use crate::math;
use crate::spectral::bunching_factor;

/// Ensemble of `N` independent emitters with per-emitter weight `c` and
/// pairwise indistinguishability `K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleParams {
    n_emitters: u32,
    c: f64,
    k: f64,
}

impl EnsembleParams {
    pub fn new(n_emitters: u32, c: f64, k: f64) -> Result<Self> {
        if n_emitters < 1 {
            return Err(Error::ParameterDomain("N must be >= 1"));
        }
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::ParameterDomain("c must be positive and finite"));
        }
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::ParameterDomain("K must lie in [0, 1]"));
        }
        Ok(Self { n_emitters, c, k })
    }

    pub fn n_emitters(&self) -> u32 {
        self.n_emitters
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Mean emitted photon number before bunching, `Nc`.
    pub fn nc(&self) -> f64 {
        f64::from(self.n_emitters) * self.c
    }
}

/// Normalized photon-number distribution `P_0..P_N`, held in log space.
#[derive(Clone, Debug)]
pub struct PhotonNumberDistribution {
    log_probs: Vec<f64>,
}

impl PhotonNumberDistribution {
    /// Largest photon number (equals the emitter count `N`).
    pub fn n_max(&self) -> u32 {
        (self.log_probs.len() - 1) as u32
    }

    pub fn prob(&self, n: u32) -> Option<f64> {
        self.log_probs.get(n as usize).map(|&lp| math::exp(lp))
    }

    pub fn log_prob(&self, n: u32) -> Option<f64> {
        self.log_probs.get(n as usize).copied()
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.log_probs
    }
}

/// Exact finite-N distribution `P_n ∝ C(N,n) B_n cⁿ`.
///
/// The table must have been built for the same `K` and cover orders up to
/// `N`; one table can be reused across a whole `Nc` scan.
pub fn ensemble_distribution(
    params: &EnsembleParams,
    table: &BunchingTable,
) -> Result<PhotonNumberDistribution> {
    if table.k() != params.k() {
        return Err(Error::ParameterDomain("bunching table was built for a different K"));
    }
    if table.n_max() < params.n_emitters() {
        return Err(Error::Coverage { needed: params.n_emitters(), available: table.n_max() });
    }
    let n = params.n_emitters() as usize;
    let ln_c = math::ln(params.c());

    let mut ln_fact = Vec::with_capacity(n + 1);
    ln_fact.push(0.0);
    let mut acc = 0.0;
    for i in 1..=n {
        acc += math::ln(i as f64);
        ln_fact.push(acc);
    }

    let mut weights = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let ln_binom = ln_fact[n] - ln_fact[j] - ln_fact[n - j];
        let ln_b = table.log_b(j as u32).expect("coverage checked").ln();
        weights.push(ln_binom + ln_b + (j as f64) * ln_c);
    }
    let z = log_sum_exp(&weights);
    for w in &mut weights {
        *w -= z;
    }
    Ok(PhotonNumberDistribution { log_probs: weights })
}

/// `⟨n⟩ = Σ n P_n`.
pub fn mean_photon_number(dist: &PhotonNumberDistribution) -> f64 {
    dist.log_probs
        .iter()
        .enumerate()
        .map(|(n, &lp)| (n as f64) * math::exp(lp))
        .sum()
}

/// `g²(0) = ⟨n(n−1)⟩ / ⟨n⟩²`.
pub fn second_order_coherence(dist: &PhotonNumberDistribution) -> Result<f64> {
    let mean = mean_photon_number(dist);
    if mean == 0.0 {
        return Err(Error::UndefinedCoherence);
    }
    let pairs: f64 = dist
        .log_probs
        .iter()
        .enumerate()
        .map(|(n, &lp)| (n as f64) * (n as f64 - 1.0) * math::exp(lp))
        .sum();
    Ok(pairs / mean / mean)
}

/// Bose–Einstein probability `P_n = n̄ⁿ / (1 + n̄)^(n+1)`.
pub fn bose_einstein(nbar: f64, n: u32) -> Result<f64> {
    if !nbar.is_finite() || nbar <= 0.0 {
        return Err(Error::ParameterDomain("nbar must be positive and finite"));
    }
    let x = nbar / (1.0 + nbar);
    Ok(math::powf(x, f64::from(n)) / (1.0 + nbar))
}

/// Modified Bose–Einstein probability `P_n = (1 − NcS)(NcS)ⁿ`.
///
/// Valid only in the convergent regime `Nc·S < 1`; beyond it the exact
/// [`ensemble_distribution`] must be used. With `S = 1` this reproduces
/// [`bose_einstein`] at `n̄ = Nc/(1 − Nc)`.
pub fn modified_bose_einstein(nc: f64, s: f64, n: u32) -> Result<f64> {
    if !nc.is_finite() || nc <= 0.0 {
        return Err(Error::ParameterDomain("Nc must be positive and finite"));
    }
    if s.is_nan() || s <= 0.0 || s > 1.0 {
        return Err(Error::ParameterDomain("S must lie in (0, 1]"));
    }
    let nc_s = nc * s;
    if nc_s >= 1.0 {
        return Err(Error::DivergentRegime { nc_s });
    }
    Ok((1.0 - nc_s) * math::powf(nc_s, f64::from(n)))
}

/// One point of the thermal mapping `Nc = e^(−ε/k_BT)`, kept as the single
/// dimensionless ratio `ε/k_BT`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalPoint {
    epsilon_over_kt: f64,
    nc: f64,
}

impl ThermalPoint {
    /// Completes the pair from `Nc`.
    pub fn from_nc(nc: f64) -> Result<Self> {
        if !nc.is_finite() || nc <= 0.0 {
            return Err(Error::ParameterDomain("Nc must be positive and finite"));
        }
        Ok(Self { epsilon_over_kt: -math::ln(nc), nc })
    }

    /// Completes the pair from `ε/k_BT`.
    pub fn from_epsilon_over_kt(epsilon_over_kt: f64) -> Result<Self> {
        if !epsilon_over_kt.is_finite() {
            return Err(Error::ParameterDomain("epsilon/kT must be finite"));
        }
        Ok(Self { epsilon_over_kt, nc: math::exp(-epsilon_over_kt) })
    }

    pub fn epsilon_over_kt(&self) -> f64 {
        self.epsilon_over_kt
    }

    pub fn nc(&self) -> f64 {
        self.nc
    }
}

/// Result of the transition scan: the located crossing and the `1/S`
/// prediction it is compared against.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransitionEstimate {
    /// `Nc` at which `g²(0)` crosses the midpoint value `1 + K/2`.
    pub nc_star: f64,
    /// Predicted transition location `1/S`.
    pub one_over_s: f64,
}

const SCAN_NC_MIN: f64 = 1e-4;
const SCAN_NC_MAX: f64 = 1e4;
const SCAN_POINTS_PER_DECADE: f64 = 200.0;
const BISECT_RELATIVE: f64 = 1e-3;

/// Locates the statistical transition for one `K` at emitter count `N`.
///
/// Walks a logarithmic `Nc` grid over `[1e-4, 1e4]` until `g²(0)` drops
/// below `1 + K/2`, then bisects in log space to a relative width of
/// `1e-3`. Fails with a scan-range error if the crossing is not bracketed.
pub fn transition_point(k: f64, n_emitters: u32) -> Result<TransitionEstimate> {
    if k.is_nan() || k <= 0.0 || k > 1.0 {
        return Err(Error::ParameterDomain("K must lie in (0, 1]"));
    }
    if n_emitters < 100 {
        return Err(Error::ParameterDomain("N must be >= 100 for a resolvable transition"));
    }
    let table = bunching_series(k, n_emitters)?;
    let threshold = 1.0 + k / 2.0;
    let g2_at = |nc: f64| -> Result<f64> {
        let params = EnsembleParams::new(n_emitters, nc / f64::from(n_emitters), k)?;
        second_order_coherence(&ensemble_distribution(&params, &table)?)
    };

    let step = math::powf(10.0, 1.0 / SCAN_POINTS_PER_DECADE);
    let mut prev = SCAN_NC_MIN;
    let mut nc = SCAN_NC_MIN;
    let mut bracket = None;
    while nc <= SCAN_NC_MAX * (1.0 + 1e-12) {
        if g2_at(nc)? < threshold {
            if nc == SCAN_NC_MIN {
                // Already below threshold at the bottom of the range.
                return Err(Error::ScanRange { lo: SCAN_NC_MIN, hi: SCAN_NC_MAX });
            }
            bracket = Some((prev, nc));
            break;
        }
        prev = nc;
        nc *= step;
    }
    let (mut lo, mut hi) =
        bracket.ok_or(Error::ScanRange { lo: SCAN_NC_MIN, hi: SCAN_NC_MAX })?;

    while hi / lo > 1.0 + BISECT_RELATIVE {
        let mid = math::sqrt(lo * hi);
        if g2_at(mid)? < threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let s = bunching_factor(k)?;
    Ok(TransitionEstimate { nc_star: math::sqrt(lo * hi), one_over_s: 1.0 / s })
}
