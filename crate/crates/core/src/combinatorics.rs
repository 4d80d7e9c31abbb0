//! Permutation combinatorics and the photon bunching coefficient.
//!
//! The bunching coefficient of an n-photon state counts permutations by
//! their fixed points: every permutation leaving exactly `n − k` photons
//! fixed contributes one factor of the k-photon indistinguishability,
//!
//! ```text
//! B_n = 1 + Σ_{k=2}^{n}  D_{n,n−k} · K_k ,
//! ```
//!
//! where `D_{n,m} = C(n,m)·!(n−m)` is the rencontres number (permutations of
//! `n` items with exactly `m` fixed points) and `!k` the derangement count.
//! `B_n` runs from `1` (distinguishable photons, `K = 0`) to `n!` (identical
//! photons, `K = 1`), so anything past `n ≈ 170` overflows `f64`. The table
//! therefore keeps every coefficient as a [`LogNumber`] and, for
//! `n <= EXACT_LIMIT`, additionally as an exact arbitrary-precision rational
//! against which the log-space path is validated.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::math;
use crate::spectral::{kn_exact_rational, ln_kn_closed_form, KSeries};

/// Largest order kept on the exact arbitrary-precision path of a
/// [`BunchingTable`].
pub const EXACT_LIMIT: u32 = 20;

/// A non-negative quantity stored as its natural logarithm.
///
/// Negative infinity encodes zero. Multiplication adds logs; addition is a
/// two-term log-sum-exp. For long sums use [`log_sum_exp`], which shifts by
/// the maximum and compensates the accumulation, keeping sums of up to
/// `10⁴` positive terms exact to a relative `10⁻¹⁴`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct LogNumber {
    log_value: f64,
}

impl LogNumber {
    pub const ZERO: Self = Self { log_value: f64::NEG_INFINITY };
    pub const ONE: Self = Self { log_value: 0.0 };

    /// Wraps a plain value; `None` if it is negative or NaN.
    pub fn from_value(value: f64) -> Option<Self> {
        if value.is_nan() || value < 0.0 {
            return None;
        }
        Some(Self { log_value: math::ln(value) })
    }

    pub fn from_ln(log_value: f64) -> Self {
        Self { log_value }
    }

    pub fn ln(self) -> f64 {
        self.log_value
    }

    /// The plain value; overflows to infinity past `exp(709)`.
    pub fn value(self) -> f64 {
        math::exp(self.log_value)
    }

    pub fn is_zero(self) -> bool {
        self.log_value == f64::NEG_INFINITY
    }
}

impl core::ops::Mul for LogNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self { log_value: self.log_value + rhs.log_value }
    }
}

impl core::ops::Add for LogNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { log_value: lse2(self.log_value, rhs.log_value) }
    }
}

/// `ln(e^a + e^b)` without intermediate overflow.
fn lse2(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + math::ln_1p(math::exp(lo - hi))
}

/// `ln Σ e^(t_i)` over a slice of log-domain terms.
///
/// Terms are accumulated in descending magnitude with a compensated sum
/// after shifting by the maximum. Empty input gives `-inf`.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let mut buf = terms.to_vec();
    buf.sort_unstable_by(|a, b| b.total_cmp(a));
    log_sum_exp_sorted(&buf)
}

/// Same as [`log_sum_exp`], input already sorted in descending order.
fn log_sum_exp_sorted(sorted: &[f64]) -> f64 {
    let Some(&max) = sorted.first() else {
        return f64::NEG_INFINITY;
    };
    if max == f64::NEG_INFINITY || max.is_nan() {
        return max;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for &t in sorted {
        let x = math::exp(t - max);
        let y = x - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    max + math::ln(sum)
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=u64::from(n) {
        acc *= i;
    }
    acc
}

/// `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

/// Derangement count `!k` (permutations of `k` items with no fixed point),
/// via the recurrence `!k = (k−1)(!(k−1) + !(k−2))`, `!0 = 1`, `!1 = 0`.
pub fn derangement_count(k: u32) -> BigUint {
    match k {
        0 => return BigUint::one(),
        1 => return BigUint::zero(),
        _ => {}
    }
    let mut prev2 = BigUint::one(); // !0
    let mut prev1 = BigUint::zero(); // !1
    for i in 2..=u64::from(k) {
        let next = (i - 1) * (&prev1 + &prev2);
        prev2 = prev1;
        prev1 = next;
    }
    prev1
}

/// `ln !k` for `k = 0..=n_max`, computed by the same recurrence in log space.
fn ln_derangement_table(n_max: u32) -> Vec<f64> {
    let mut table = Vec::with_capacity(n_max as usize + 1);
    table.push(0.0); // ln !0
    if n_max == 0 {
        return table;
    }
    table.push(f64::NEG_INFINITY); // ln !1
    for k in 2..=n_max {
        let prev1 = table[k as usize - 1];
        let prev2 = table[k as usize - 2];
        table.push(math::ln(f64::from(k) - 1.0) + lse2(prev1, prev2));
    }
    table
}

fn ln_factorial_table(n_max: u32) -> Vec<f64> {
    let mut table = Vec::with_capacity(n_max as usize + 1);
    table.push(0.0);
    let mut acc = 0.0;
    for i in 1..=n_max {
        acc += math::ln(f64::from(i));
        table.push(acc);
    }
    table
}

/// Rencontres number `D_{n,fixed} = C(n, fixed) · !(n − fixed)`: the number
/// of permutations of `n` items with exactly `fixed` fixed points.
pub fn rencontres_number(n: u32, fixed: u32) -> Result<BigUint> {
    if fixed > n {
        return Err(Error::ParameterDomain("fixed points cannot exceed n"));
    }
    Ok(binomial(n, fixed) * derangement_count(n - fixed))
}

/// Bunching coefficient `B_n` evaluated from a tabulated `K` series on the
/// log-sum-exp path.
pub fn bunching_coefficient(n: u32, kseries: &KSeries) -> Result<LogNumber> {
    if n <= 1 {
        return Ok(LogNumber::ONE);
    }
    if kseries.n_max() < n {
        return Err(Error::Coverage { needed: n, available: kseries.n_max() });
    }
    let ln_fact = ln_factorial_table(n);
    let ln_der = ln_derangement_table(n);
    let mut terms = Vec::with_capacity(n as usize);
    terms.push(0.0); // the identity permutation
    for k in 2..=n {
        let ln_binom = ln_fact[n as usize] - ln_fact[k as usize] - ln_fact[(n - k) as usize];
        let kk = kseries.value(k).expect("coverage checked");
        terms.push(ln_binom + ln_der[k as usize] + math::ln(kk));
    }
    terms.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(LogNumber::from_ln(log_sum_exp_sorted(&terms)))
}

/// Bunching coefficients `B_0..B_{n_max}` for one pairwise `K`.
///
/// Every order carries its log-space value; orders up to [`EXACT_LIMIT`]
/// also carry the exact rational value obtained from arbitrary-precision
/// arithmetic on the binary expansion of `K`.
#[derive(Clone, Debug)]
pub struct BunchingTable {
    k: f64,
    log_b: Vec<LogNumber>,
    exact_b: Vec<BigRational>,
}

impl BunchingTable {
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Largest order in the table.
    pub fn n_max(&self) -> u32 {
        (self.log_b.len() - 1) as u32
    }

    /// Largest order covered by the exact rational path.
    pub fn exact_limit(&self) -> u32 {
        (self.exact_b.len() - 1) as u32
    }

    /// `B_n` in log space.
    pub fn log_b(&self, n: u32) -> Option<LogNumber> {
        self.log_b.get(n as usize).copied()
    }

    /// All log-space coefficients, index `n`.
    pub fn log_b_all(&self) -> &[LogNumber] {
        &self.log_b
    }

    /// Exact `B_n` for `n <= exact_limit()`.
    pub fn exact_b(&self, n: u32) -> Option<&BigRational> {
        self.exact_b.get(n as usize)
    }
}

/// Builds the full bunching table for `K` in `[0, 1]` up to `n_max`.
///
/// Cost is `O(n_max²)` in the summation; the `K_k` factors come from the
/// circulant closed form, so `K = 0` and `K = 1` reduce to exactly `B_n = 1`
/// and `B_n = n!`.
pub fn bunching_series(k: f64, n_max: u32) -> Result<BunchingTable> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::ParameterDomain("K must lie in [0, 1]"));
    }
    if n_max < 1 {
        return Err(Error::ParameterDomain("n_max must be >= 1"));
    }

    let nm = n_max as usize;
    let ln_fact = ln_factorial_table(n_max);
    let ln_der = ln_derangement_table(n_max);
    let mut ln_k = vec![0.0_f64; nm + 1];
    for ord in 2..=n_max {
        ln_k[ord as usize] =
            if k == 0.0 { f64::NEG_INFINITY } else { ln_kn_closed_form(ord, k)? };
    }

    let mut log_b = Vec::with_capacity(nm + 1);
    log_b.push(LogNumber::ONE); // B_0
    if n_max >= 1 {
        log_b.push(LogNumber::ONE); // B_1
    }
    let mut terms: Vec<f64> = Vec::with_capacity(nm + 1);
    for n in 2..=n_max {
        terms.clear();
        terms.push(0.0);
        for ord in 2..=n {
            let ln_binom =
                ln_fact[n as usize] - ln_fact[ord as usize] - ln_fact[(n - ord) as usize];
            terms.push(ln_binom + ln_der[ord as usize] + ln_k[ord as usize]);
        }
        terms.sort_unstable_by(|a, b| b.total_cmp(a));
        log_b.push(LogNumber::from_ln(log_sum_exp_sorted(&terms)));
    }

    let exact_b = exact_bunching(k, n_max.min(EXACT_LIMIT))?;
    Ok(BunchingTable { k, log_b, exact_b })
}

/// Exact rational `B_0..B_{limit}` for the binary value of `k`.
fn exact_bunching(k: f64, limit: u32) -> Result<Vec<BigRational>> {
    let k_rational = BigRational::from_float(k)
        .ok_or(Error::ParameterDomain("K must be finite"))?;
    let mut kk = Vec::with_capacity(limit as usize + 1);
    kk.push(BigRational::one()); // unused order 0
    for ord in 1..=limit {
        kk.push(kn_exact_rational(ord, &k_rational)?);
    }

    let mut out = Vec::with_capacity(limit as usize + 1);
    out.push(BigRational::one());
    if limit >= 1 {
        out.push(BigRational::one());
    }
    for n in 2..=limit {
        let mut acc = BigRational::one();
        for ord in 2..=n {
            let count = binomial(n, ord) * derangement_count(ord);
            acc += BigRational::from(BigInt::from(count)) * &kk[ord as usize];
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::kn_series;
    use approx::assert_relative_eq;
    use num_traits::ToPrimitive;

    #[test]
    fn derangement_examples() {
        assert_eq!(derangement_count(0), BigUint::from(1u32));
        assert_eq!(derangement_count(1), BigUint::from(0u32));
        assert_eq!(derangement_count(3), BigUint::from(2u32));
        assert_eq!(derangement_count(4), BigUint::from(9u32));
    }

    #[test]
    fn derangements_match_enumeration() {
        use itertools::Itertools;
        for n in 0..=7u32 {
            let brute = (0..n as usize)
                .permutations(n as usize)
                .filter(|p| p.iter().enumerate().all(|(i, &x)| i != x))
                .count();
            assert_eq!(derangement_count(n), BigUint::from(brute));
        }
    }

    #[test]
    fn rencontres_examples() {
        assert_eq!(rencontres_number(3, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(rencontres_number(3, 2).unwrap(), BigUint::from(0u32));
        assert_eq!(rencontres_number(3, 3).unwrap(), BigUint::from(1u32));
        assert!(rencontres_number(3, 4).is_err());
    }

    #[test]
    fn rencontres_partition_all_permutations() {
        for n in 1..=20u32 {
            let total: BigUint =
                (0..=n).map(|m| rencontres_number(n, m).unwrap()).sum();
            assert_eq!(total, factorial(n), "n = {n}");
            assert_eq!(rencontres_number(n, n - 1).unwrap(), BigUint::zero());
        }
    }

    #[test]
    fn log_number_basics() {
        let two = LogNumber::from_value(2.0).unwrap();
        let three = LogNumber::from_value(3.0).unwrap();
        assert_relative_eq!((two * three).value(), 6.0, max_relative = 1e-15);
        assert_relative_eq!((two + three).value(), 5.0, max_relative = 1e-15);
        assert_eq!(LogNumber::ZERO + two, two);
        assert_eq!(LogNumber::ZERO * two, LogNumber::ZERO);
        assert!(LogNumber::from_value(0.0).unwrap().is_zero());
        assert!(LogNumber::from_value(-1.0).is_none());
        assert!(LogNumber::from_value(f64::NAN).is_none());
    }

    #[test]
    fn log_sum_exp_is_accurate_over_many_terms() {
        // sum of 1..=10^4 assembled in log space
        let terms: Vec<f64> = (1..=10_000u32).map(|i| math::ln(f64::from(i))).collect();
        let expect = math::ln(10_000.0 * 10_001.0 / 2.0);
        let got = log_sum_exp(&terms);
        assert!(math::abs(got - expect) <= 1e-14 * math::abs(expect));
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY; 3]), f64::NEG_INFINITY);
    }

    #[test]
    fn bunching_coefficient_examples() {
        // K -> 0 is not representable as a KSeries; a tiny K stands in.
        let s = kn_series(1e-9, 12).unwrap();
        for n in [2, 5, 12] {
            assert_relative_eq!(
                bunching_coefficient(n, &s).unwrap().value(),
                1.0,
                max_relative = 1e-6
            );
        }

        let s = kn_series(1.0, 3).unwrap();
        assert_relative_eq!(bunching_coefficient(3, &s).unwrap().value(), 6.0, max_relative = 1e-14);

        let s = kn_series(0.5, 3).unwrap();
        assert_relative_eq!(
            bunching_coefficient(3, &s).unwrap().value(),
            81.0 / 26.0,
            max_relative = 1e-13
        );

        assert!(matches!(
            bunching_coefficient(5, &kn_series(0.5, 4).unwrap()),
            Err(Error::Coverage { needed: 5, available: 4 })
        ));
    }

    #[test]
    fn bunching_series_indistinguishable_limit_is_factorial() {
        let table = bunching_series(1.0, 20).unwrap();
        for n in 0..=20u32 {
            let expect = BigRational::from(BigInt::from(factorial(n)));
            assert_eq!(table.exact_b(n).unwrap(), &expect, "n = {n}");
        }
    }

    #[test]
    fn bunching_series_distinguishable_limit_is_one() {
        let table = bunching_series(0.0, 1000).unwrap();
        for n in 0..=1000u32 {
            assert_eq!(table.log_b(n).unwrap().ln(), 0.0, "n = {n}");
        }
    }

    #[test]
    fn bunching_series_small_example() {
        let table = bunching_series(0.5, 3).unwrap();
        let expect = [1.0, 1.0, 1.5, 81.0 / 26.0];
        for (n, e) in expect.iter().enumerate() {
            assert_relative_eq!(table.log_b(n as u32).unwrap().value(), e, max_relative = 1e-13);
        }
    }

    #[test]
    fn exact_golden_rationals_at_one_half() {
        // Frozen exact values of B_n at K = 1/2.
        let table = bunching_series(0.5, 8).unwrap();
        let golden: [(u32, i64, i64); 5] = [
            (4, 537, 65),
            (5, 3857, 143),
            (6, 212_239, 2_002),
            (7, 153_128_359, 312_598),
            (8, 83_336_704_251, 32_041_295),
        ];
        for (n, num, den) in golden {
            let expect = BigRational::new(BigInt::from(num), BigInt::from(den));
            assert_eq!(table.exact_b(n).unwrap(), &expect, "n = {n}");
        }
    }

    #[test]
    fn log_path_agrees_with_exact_path() {
        for k in [0.05, 0.3, 0.5, 0.77, 1.0] {
            let table = bunching_series(k, 20).unwrap();
            for n in 0..=20u32 {
                let exact = table.exact_b(n).unwrap().to_f64().unwrap();
                let log = table.log_b(n).unwrap().value();
                assert!(
                    math::abs(log - exact) <= 1e-10 * exact,
                    "K = {k}, n = {n}: log path {log} vs exact {exact}"
                );
            }
        }
    }

    #[test]
    fn bunching_bounds_and_monotonicity() {
        let n_max = 300u32;
        let ln_fact = ln_factorial_table(n_max);
        let lo = bunching_series(0.35, n_max).unwrap();
        let hi = bunching_series(0.65, n_max).unwrap();
        let mut prev = 0.0;
        for n in 0..=n_max {
            let b = lo.log_b(n).unwrap().ln();
            assert!(b >= -1e-12 && b <= ln_fact[n as usize] + 1e-9, "bounds at n = {n}");
            assert!(b >= prev - 1e-12, "log B non-decreasing at n = {n}");
            prev = b;
            if n >= 2 {
                assert!(hi.log_b(n).unwrap().ln() > b, "monotone in K at n = {n}");
            }
        }
    }

    #[test]
    fn bunching_series_rejects_bad_input() {
        assert!(bunching_series(-0.1, 10).is_err());
        assert!(bunching_series(1.5, 10).is_err());
        assert!(bunching_series(f64::NAN, 10).is_err());
        assert!(bunching_series(0.5, 0).is_err());
    }
}
