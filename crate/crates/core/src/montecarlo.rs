//! Monte Carlo cross-check of the analytic `K_n` routes.
//!
//! `K_n` is an n-dimensional average of the cyclic overlap product
//! `⟨ω_1|ω_2⟩⟨ω_2|ω_3⟩⋯⟨ω_n|ω_1⟩` over center frequencies drawn from the
//! Gaussian `f(ω)`. The estimator samples frequency tuples directly —
//! the integrand is bounded in `(0, 1]`, so plain Monte Carlo is adequate
//! for small `n` and no importance sampling is used.
//!
//! Sampling is block-structured: block `b` draws from ChaCha8 stream `b` of
//! the master seed, and the reduction is an ordered sum of per-block
//! partials. Estimates are therefore bit-reproducible for a fixed seed, no
//! matter how blocks might be scheduled.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::math;
use crate::spectral::SpectralModel;

/// Samples per ChaCha stream.
const BLOCK_SIZE: u64 = 1 << 16;

/// Minimum sample count accepted by [`mc_kn_estimate`].
pub const MIN_SAMPLES: u64 = 1000;

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by `sqrt(samples)`.
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Draws `count` i.i.d. center frequencies from `f(ω)`: normal with mean
/// `omega_c` and standard deviation `sigma_f` (a constant sequence when
/// `sigma_f = 0`).
pub fn sample_center_frequencies(
    model: &SpectralModel,
    count: u64,
    seed: u64,
) -> Result<Vec<f64>> {
    if count < 1 {
        return Err(Error::ParameterDomain("count must be >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            model.omega_c() + model.sigma_f() * z
        })
        .collect())
}

/// Estimates `K_n` as the sample mean of the cyclic overlap product over
/// independent n-tuples of center frequencies.
pub fn mc_kn_estimate(
    n: u32,
    model: &SpectralModel,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if n < 2 {
        return Err(Error::ParameterDomain("n must be >= 2"));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::StatisticalPower { samples, minimum: MIN_SAMPLES });
    }

    let inv_8sg2 = 1.0 / (8.0 * model.sigma_g() * model.sigma_g());
    let tuple_len = n as usize;
    let blocks = samples.div_ceil(BLOCK_SIZE);

    let mut partials = Vec::with_capacity(blocks as usize);
    let mut omegas = Vec::with_capacity(tuple_len);
    for block in 0..blocks {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(block);
        let in_block = (samples - block * BLOCK_SIZE).min(BLOCK_SIZE);
        let mut sum = 0.0_f64;
        let mut sum_sq = 0.0_f64;
        for _ in 0..in_block {
            omegas.clear();
            for _ in 0..tuple_len {
                let z: f64 = rng.sample(StandardNormal);
                omegas.push(model.omega_c() + model.sigma_f() * z);
            }
            let mut q = 0.0;
            for i in 0..tuple_len {
                let d = omegas[i] - omegas[(i + 1) % tuple_len];
                q += d * d;
            }
            let product = math::exp(-q * inv_8sg2);
            sum += product;
            sum_sq += product * product;
        }
        partials.push((sum, sum_sq));
    }

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for (s, s2) in partials {
        sum += s;
        sum_sq += s2;
    }
    let m = samples as f64;
    let mean = sum / m;
    let variance = ((sum_sq - sum * sum / m) / (m - 1.0)).max(0.0);
    Ok(McEstimate { mean, std_error: math::sqrt(variance / m), samples, seed })
}
