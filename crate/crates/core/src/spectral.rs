//! Multi-photon indistinguishability for the Gaussian spectral model.
//!
//! A single photon is drawn from a mixed state whose wavepacket has spectral
//! width `sigma_g` and whose center frequency jitters around `omega_c` with
//! width `sigma_f`. The pairwise indistinguishability is then
//! `K = sigma_g / sqrt(sigma_g² + sigma_f²)`, and the n-photon value
//! `K_n = tr ρⁿ` reduces to an n-dimensional Gaussian integral over the
//! cyclic product of wavepacket overlaps. This module evaluates `K_n` by
//! three independent routes that are checked against each other:
//!
//! 1. [`kn_table`] — rational closed forms in `K` for `n = 2..=6`;
//! 2. [`kn_closed_form`] — the circulant eigenvalue product
//!    `K_n = Π_{j=0}^{n−1} [1 + (r/2)(1 − cos 2πj/n)]^(−1/2)` with
//!    `r = (1−K²)/K²`, valid for every `n`;
//! 3. [`kn_determinant`] — direct evaluation of the Gaussian integral via a
//!    scaled continuant recurrence for the cyclic tridiagonal determinant.
//!
//! `K_n` decays exponentially in `n`; [`fit_alpha`] extracts the decay rate
//! `α(K)` by a least-squares fit in the log domain, and [`bunching_factor`]
//! returns its asymptotic limit `S = e^(−α) = 2K/(1+K)`.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::math;

/// Gaussian single-photon spectral parameters.
///
/// `sigma_g` is the spectral width of the transform-limited wavepacket,
/// `sigma_f` the width of the center-frequency distribution, and `omega_c`
/// its mean. All derived indistinguishabilities are independent of
/// `omega_c`; it is carried only so that sampling routines can honor it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralModel {
    sigma_g: f64,
    sigma_f: f64,
    omega_c: f64,
}

impl SpectralModel {
    pub fn new(sigma_g: f64, sigma_f: f64, omega_c: f64) -> Result<Self> {
        if !sigma_g.is_finite() || sigma_g <= 0.0 {
            return Err(Error::ParameterDomain("sigma_g must be positive and finite"));
        }
        if !sigma_f.is_finite() || sigma_f < 0.0 {
            return Err(Error::ParameterDomain("sigma_f must be non-negative and finite"));
        }
        if !omega_c.is_finite() {
            return Err(Error::ParameterDomain("omega_c must be finite"));
        }
        Ok(Self { sigma_g, sigma_f, omega_c })
    }

    /// Model with `sigma_g = 1`, `omega_c = 0`, and `sigma_f` chosen so the
    /// pairwise indistinguishability equals `k`.
    pub fn from_pairwise(k: f64) -> Result<Self> {
        check_k_half_open(k)?;
        let sigma_f = math::sqrt(1.0 / (k * k) - 1.0);
        Self::new(1.0, sigma_f, 0.0)
    }

    pub fn sigma_g(&self) -> f64 {
        self.sigma_g
    }

    pub fn sigma_f(&self) -> f64 {
        self.sigma_f
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    /// Pairwise indistinguishability `K = sigma_g / sqrt(sigma_g² + sigma_f²)`.
    pub fn pairwise_indistinguishability(&self) -> f64 {
        self.sigma_g / math::sqrt(self.sigma_g * self.sigma_g + self.sigma_f * self.sigma_f)
    }
}

/// Pairwise indistinguishability of the Gaussian model, in `(0, 1]`.
pub fn pairwise_indistinguishability(model: &SpectralModel) -> f64 {
    model.pairwise_indistinguishability()
}

/// Overlap of two transform-limited wavepackets with centers `omega_i`,
/// `omega_j` and common width `sigma_g`:
/// `⟨ω_i|ω_j⟩ = exp(−(ω_i − ω_j)² / 8σ_g²)`.
pub fn single_photon_overlap(omega_i: f64, omega_j: f64, sigma_g: f64) -> Result<f64> {
    if !sigma_g.is_finite() || sigma_g <= 0.0 {
        return Err(Error::ParameterDomain("sigma_g must be positive and finite"));
    }
    let d = omega_i - omega_j;
    Ok(math::exp(-d * d / (8.0 * sigma_g * sigma_g)))
}

fn check_k_half_open(k: f64) -> Result<()> {
    if k.is_nan() || k <= 0.0 || k > 1.0 {
        return Err(Error::ParameterDomain("K must lie in (0, 1]"));
    }
    Ok(())
}

/// `ln K_n` from the circulant eigenvalue product. Exact `0.0` for `K = 1`.
pub fn ln_kn_closed_form(n: u32, k: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::ParameterDomain("n must be >= 1"));
    }
    check_k_half_open(k)?;
    if k == 1.0 {
        return Ok(0.0);
    }
    let half_r = 0.5 * (1.0 - k * k) / (k * k);
    let nf = f64::from(n);
    let mut sum = 0.0;
    let mut comp = 0.0; // Kahan carry
    for j in 1..n {
        let term = math::ln_1p(half_r * (1.0 - math::cos(TAU * f64::from(j) / nf)));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(-0.5 * sum)
}

/// `K_n` from the circulant eigenvalue product (route 2).
pub fn kn_closed_form(n: u32, k: f64) -> Result<f64> {
    Ok(math::exp(ln_kn_closed_form(n, k)?))
}

/// Exact rational `K_n = Sⁿ / (1 − yⁿ)` with `S = 2K/(1+K)` and
/// `y = (1−K)/(1+K)`, for rational `K` in `[0, 1]`.
///
/// This is the same algebra as [`kn_closed_form`] pushed through the
/// Chebyshev identity for the circulant product; it is used as the exact
/// arithmetic backbone of the bunching tables and as a cross-check in tests.
pub fn kn_exact_rational(n: u32, k: &BigRational) -> Result<BigRational> {
    if n < 1 {
        return Err(Error::ParameterDomain("n must be >= 1"));
    }
    if k.is_negative() || k > &BigRational::one() {
        return Err(Error::ParameterDomain("K must lie in [0, 1]"));
    }
    if n == 1 {
        return Ok(BigRational::one());
    }
    if k.is_zero() {
        return Ok(BigRational::zero());
    }
    let one = BigRational::one();
    let denom = &one + k;
    let s = BigRational::from(BigInt::from(2)) * k / &denom;
    let y = (&one - k) / &denom;
    let expon = i32::try_from(n).map_err(|_| Error::ParameterDomain("n too large"))?;
    let s_pow = s.pow(expon);
    if y.is_zero() {
        return Ok(s_pow);
    }
    Ok(s_pow / (&one - y.pow(expon)))
}

/// `K_n` from the n-dimensional Gaussian integral (route 3).
///
/// The quadratic form of the integrand is the cyclic tridiagonal matrix `A`
/// with diagonal `1/σ_f² + 1/2σ_g²` and couplings `−1/4σ_g²` (coalescing to
/// `−1/2σ_g²` for `n = 2`), giving `K_n = (σ_f²)^(−n/2) (det A)^(−1/2)`.
/// The determinant is evaluated through the continuant recurrence
/// `p_k = d·p_{k−1} − e²·p_{k−2}` with running rescaling, so the route stays
/// finite up to `n ≈ 10³`.
///
/// Unavailable at `sigma_f = 0` (pure state, `K = 1`): the prefactor and the
/// determinant diverge separately there. Callers should use the closed
/// forms, which give `K_n = 1` exactly.
pub fn kn_determinant(n: u32, model: &SpectralModel) -> Result<f64> {
    if n < 2 {
        return Err(Error::ParameterDomain("n must be >= 2"));
    }
    if model.sigma_f == 0.0 {
        return Err(Error::RouteUnavailable(
            "determinant route is singular at sigma_f = 0; use kn_closed_form (K_n = 1)",
        ));
    }
    let sf2 = model.sigma_f * model.sigma_f;
    let sg2 = model.sigma_g * model.sigma_g;
    let d = 1.0 / sf2 + 1.0 / (2.0 * sg2);

    let ln_det = if n == 2 {
        // Both cyclic couplings connect the same pair of frequencies.
        let e2 = 1.0 / (2.0 * sg2);
        let det = d * d - e2 * e2;
        if det <= 0.0 {
            return Err(Error::InternalInvariant("2x2 determinant not positive"));
        }
        math::ln(det)
    } else {
        let e = -1.0 / (4.0 * sg2);
        ln_cyclic_tridiag_det(n as usize, d, e)?
    };

    Ok(math::exp(-0.5 * (f64::from(n) * math::ln(sf2) + ln_det)))
}

/// `ln det` of the n×n cyclic tridiagonal matrix with diagonal `d`,
/// neighbor couplings `e`, and corner entries `e` (n >= 3):
/// `det = p_n − e²·p_{n−2} − 2(−e)ⁿ`.
fn ln_cyclic_tridiag_det(n: usize, d: f64, e: f64) -> Result<f64> {
    const RESCALE_HI: f64 = 1e150;
    const RESCALE_LO: f64 = 1e-150;

    let e2 = e * e;
    // Continuants scaled by exp(scale).
    let mut p_prev = 1.0_f64; // p_{k-1}
    let mut p_curr = d; // p_k at k = 1
    let mut scale = 0.0_f64;
    // (ln value, scale) of p_{n-2}; for n = 3 that is p_1 = d.
    let mut pn2 = (math::ln(d), 0.0_f64);
    for k in 2..=n {
        let p_next = d * p_curr - e2 * p_prev;
        p_prev = p_curr;
        p_curr = p_next;
        if p_curr.is_nan() || p_curr <= 0.0 {
            return Err(Error::InternalInvariant("continuant not positive"));
        }
        if !(RESCALE_LO..=RESCALE_HI).contains(&p_curr) {
            let f = p_curr;
            scale += math::ln(f);
            p_prev /= f;
            p_curr = 1.0;
        }
        if k == n - 2 {
            pn2 = (math::ln(p_curr), scale);
        }
    }

    let corner = e2 * math::exp(pn2.0 + pn2.1 - scale);
    let cycle = 2.0 * math::exp((n as f64) * math::ln(math::abs(e)) - scale);
    let det_scaled = p_curr - corner - cycle;
    if det_scaled.is_nan() || det_scaled <= 0.0 {
        return Err(Error::InternalInvariant("cyclic determinant not positive"));
    }
    Ok(scale + math::ln(det_scaled))
}

/// Tabulated rational closed forms for `K_n`, `n = 2..=6`.
pub fn kn_table(n: u32, k: f64) -> Result<f64> {
    check_k_half_open(k)?;
    let k2 = k * k;
    match n {
        2 => Ok(k),
        3 => Ok(4.0 * k2 / (3.0 + k2)),
        4 => Ok(2.0 * k2 * k / (1.0 + k2)),
        5 => Ok(16.0 * k2 * k2 / (5.0 + 10.0 * k2 + k2 * k2)),
        6 => Ok(16.0 * k2 * k2 * k / (3.0 + 10.0 * k2 + 3.0 * k2 * k2)),
        _ => Err(Error::UnsupportedOrder(n)),
    }
}

/// Tabulated `K_n` values for one pairwise `K`, orders `1..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct KSeries {
    k: f64,
    values: Vec<f64>,
}

impl KSeries {
    /// Builds a series from externally supplied values.
    ///
    /// The sequence must start at `K_1 = 1`, match `K_2 = K` to within
    /// rounding, stay in `(0, 1]`, and be non-increasing.
    pub fn from_values(k: f64, values: Vec<f64>) -> Result<Self> {
        check_k_half_open(k)?;
        if values.len() < 2 {
            return Err(Error::ParameterDomain("series must cover at least orders 1 and 2"));
        }
        if values[0] != 1.0 {
            return Err(Error::ParameterDomain("K_1 must equal 1"));
        }
        if math::abs(values[1] - k) > 1e-12 * k {
            return Err(Error::ParameterDomain("K_2 must equal the pairwise K"));
        }
        for w in values.windows(2) {
            if w[1].is_nan() || w[1] <= 0.0 || w[1] > w[0] {
                return Err(Error::ParameterDomain("series must be positive and non-increasing"));
            }
        }
        Ok(Self { k, values })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Largest order covered by the series.
    pub fn n_max(&self) -> u32 {
        self.values.len() as u32
    }

    /// `K_n` for `n` in `1..=n_max`.
    pub fn value(&self, n: u32) -> Option<f64> {
        if n == 0 {
            return None;
        }
        self.values.get(n as usize - 1).copied()
    }

    /// All values, index `i` holding `K_{i+1}`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Builds `K_1..K_{n_max}` from the circulant eigenvalue product.
pub fn kn_series(k: f64, n_max: u32) -> Result<KSeries> {
    if n_max < 2 {
        return Err(Error::ParameterDomain("n_max must be >= 2"));
    }
    check_k_half_open(k)?;
    let mut values = Vec::with_capacity(n_max as usize);
    values.push(1.0);
    for n in 2..=n_max {
        values.push(kn_closed_form(n, k)?);
    }
    Ok(KSeries { k, values })
}

/// Result of an exponential-decay fit `K_n ≈ e^(−αn)` over a window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult {
    /// Decay rate per photon, `α >= 0`.
    pub alpha: f64,
    /// Bunching factor `S = e^(−α)`.
    pub s: f64,
    pub n_min: u32,
    pub n_max: u32,
    /// Root-mean-square fit error in the log domain.
    pub residual: f64,
}

/// Least-squares fit of `ln K_n` against `n` over `[n_min, n_max]`.
///
/// As the window moves to large `n` the fitted `S` converges to the
/// asymptotic value `2K/(1+K)` returned by [`bunching_factor`].
pub fn fit_alpha(series: &KSeries, n_min: u32, n_max: u32) -> Result<FitResult> {
    if n_min < 2 {
        return Err(Error::FitWindow("window must start at n >= 2"));
    }
    if n_min >= n_max {
        return Err(Error::FitWindow("window must satisfy n_min < n_max"));
    }
    if n_max > series.n_max() {
        return Err(Error::Coverage { needed: n_max, available: series.n_max() });
    }
    let count = n_max - n_min + 1;
    if count < 3 {
        return Err(Error::FitWindow("window must contain at least 3 points"));
    }
    // Values can underflow to zero far into the tail of a small-K series.
    if (n_min..=n_max).any(|n| series.value(n).expect("window inside series") <= 0.0) {
        return Err(Error::ParameterDomain("K_n is not positive inside the fit window"));
    }

    let m = f64::from(count);
    let xs = (n_min..=n_max).map(f64::from);
    let ys: Vec<f64> = (n_min..=n_max)
        .map(|n| math::ln(series.value(n).expect("window inside series")))
        .collect();
    let x_mean = xs.clone().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.clone().zip(ys.iter()) {
        let dx = x - x_mean;
        sxx += dx * dx;
        sxy += dx * (y - y_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let mut ss = 0.0;
    for (x, y) in xs.zip(ys.iter()) {
        let r = y - (intercept + slope * x);
        ss += r * r;
    }
    let residual = math::sqrt(ss / m);

    let alpha = if slope == 0.0 { 0.0 } else { -slope };
    Ok(FitResult { alpha, s: math::exp(-alpha), n_min, n_max, residual })
}

/// Bunching factor `S = e^(−α(K))` of the Gaussian model, for `K` in `[0, 1]`.
///
/// Uses the asymptotic closed form `S = 2K/(1+K)` of the circulant
/// eigenvalue product; `fit_alpha` recovers the same value empirically.
pub fn bunching_factor(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::ParameterDomain("K must lie in [0, 1]"));
    }
    Ok(2.0 * k / (1.0 + k))
}
