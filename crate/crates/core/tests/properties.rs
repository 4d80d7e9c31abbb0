//! Property and invariant tests: randomized checks of the analytic
//! relations plus a few deterministic grid checks too slow for unit tests.

use proptest::prelude::*;

use photonstat_core::{
    bunching_factor, bunching_series, ensemble_distribution, kn_closed_form, kn_determinant,
    ln_kn_closed_form, log_sum_exp, mc_kn_estimate, modified_bose_einstein,
    second_order_coherence, EnsembleParams, SpectralModel, ThermalPoint,
};

proptest! {
    #[test]
    fn kn_strictly_decreasing_in_n(k in 0.02f64..0.999, n in 2u32..300) {
        let a = ln_kn_closed_form(n, k).unwrap();
        let b = ln_kn_closed_form(n + 1, k).unwrap();
        prop_assert!(b < a, "K_n not strictly decreasing: ln K_{n} = {a}, ln K_{} = {b}", n + 1);
    }

    #[test]
    fn kn_strictly_increasing_in_k(k_lo in 0.02f64..0.90, bump in 0.01f64..0.09, n in 2u32..100) {
        let k_hi = k_lo + bump;
        let a = kn_closed_form(n, k_lo).unwrap();
        let b = kn_closed_form(n, k_hi).unwrap();
        prop_assert!(b > a);
    }

    #[test]
    fn determinant_and_closed_form_agree(k in 0.05f64..0.995, n in 2u32..=30) {
        let model = SpectralModel::from_pairwise(k).unwrap();
        let det = kn_determinant(n, &model).unwrap();
        let closed = kn_closed_form(n, k).unwrap();
        prop_assert!((det - closed).abs() <= 1e-10, "det = {det}, closed = {closed}");
    }

    #[test]
    fn distributions_normalize(
        n_emitters in 2u32..300,
        log_c in -14.0f64..2.3,
        k in 0.0f64..=1.0,
    ) {
        let c = log_c.exp();
        let table = bunching_series(k, n_emitters).unwrap();
        let params = EnsembleParams::new(n_emitters, c, k).unwrap();
        let dist = ensemble_distribution(&params, &table).unwrap();
        let total: f64 = dist.log_probs().iter().map(|&lp| lp.exp()).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12, "sum = {total}");
    }

    #[test]
    fn geometric_tail_ratio_is_exact(nc in 0.01f64..10.0, s in 0.05f64..=1.0, n in 0u32..60) {
        prop_assume!(nc * s < 1.0);
        let ratio = modified_bose_einstein(nc, s, n + 1).unwrap()
            / modified_bose_einstein(nc, s, n).unwrap();
        prop_assert!((ratio / (nc * s) - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn thermal_mapping_round_trips(log_nc in -14.0f64..14.0) {
        let nc = log_nc.exp();
        let point = ThermalPoint::from_nc(nc).unwrap();
        let back = ThermalPoint::from_epsilon_over_kt(point.epsilon_over_kt()).unwrap();
        prop_assert!((back.nc() / nc - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn log_sum_exp_matches_direct_summation(terms in prop::collection::vec(-30.0f64..30.0, 1..50)) {
        let direct: f64 = terms.iter().map(|&t| t.exp()).sum();
        let lse = log_sum_exp(&terms);
        prop_assert!((lse - direct.ln()).abs() <= 1e-13);
    }

    #[test]
    fn monte_carlo_mean_stays_in_unit_interval(k in 0.05f64..=1.0, n in 2u32..=8, seed: u64) {
        let model = SpectralModel::from_pairwise(k).unwrap();
        let est = mc_kn_estimate(n, &model, 1000, seed).unwrap();
        prop_assert!(est.mean > 0.0 && est.mean <= 1.0);
        prop_assert!(est.std_error >= 0.0);
    }
}

/// `K_{n+1}/K_n` approaches `S` geometrically; the window where the residual
/// drops below 1e-6 starts near n = 60 for the smallest K on the grid.
#[test]
fn kn_ratio_converges_to_bunching_factor() {
    for i in 1..=9u32 {
        let k = f64::from(i) / 10.0;
        let s = bunching_factor(k).unwrap();
        for n in [60u32, 80, 120, 200] {
            let ratio =
                (ln_kn_closed_form(n + 1, k).unwrap() - ln_kn_closed_form(n, k).unwrap()).exp();
            assert!(
                (ratio - s).abs() <= 1e-6,
                "K = {k}, n = {n}: |ratio - S| = {:.3e}",
                (ratio - s).abs()
            );
        }
    }
}

/// `K_{n+m} = K_n K_m` holds up to a `y^min(n,m)` correction with
/// `y = (1-K)/(1+K)`, so the asserted window keeps that correction below
/// the 1e-4 tolerance: n, m >= 20 for K >= 0.3 and n, m >= 60 below that.
#[test]
fn kn_is_asymptotically_multiplicative() {
    let cases: &[(f64, &[u32])] = &[
        (0.1, &[60, 75, 90]),
        (0.2, &[60, 75, 90]),
        (0.3, &[20, 35, 60]),
        (0.5, &[20, 35, 60]),
        (0.9, &[20, 35, 60]),
    ];
    for &(k, orders) in cases {
        for &n in orders {
            for &m in orders {
                let combined = ln_kn_closed_form(n + m, k).unwrap();
                let split = ln_kn_closed_form(n, k).unwrap() + ln_kn_closed_form(m, k).unwrap();
                let rel = (split - combined).exp_m1().abs();
                assert!(rel <= 1e-4, "K = {k}, n = {n}, m = {m}: rel = {rel:.3e}");
            }
        }
    }
}

/// Bounds of the coherence. Globally `1 - 1/N <= g2(0) <= 2` (the thermal
/// ceiling); the `1 + K` plateau bounds it only in the low-intensity regime,
/// since the exact finite-N curve overshoots `1 + K` near the transition
/// before condensing toward 1.
#[test]
fn g2_stays_between_its_limits() {
    let n_emitters = 1000u32;
    for k in [0.3, 1.0] {
        let table = bunching_series(k, n_emitters).unwrap();
        let g2_at = |nc: f64| {
            let params = EnsembleParams::new(n_emitters, nc / f64::from(n_emitters), k).unwrap();
            second_order_coherence(&ensemble_distribution(&params, &table).unwrap()).unwrap()
        };
        let lo = 1.0 - 1.0 / f64::from(n_emitters) - 1e-9;
        let mut nc = 1e-4;
        while nc <= 1e4 {
            let g2 = g2_at(nc);
            assert!((lo..=2.0).contains(&g2), "K = {k}, Nc = {nc}: g2 = {g2}");
            nc *= 10f64.powf(0.25);
        }
        for nc in [1e-4, 3e-4, 1e-3] {
            let g2 = g2_at(nc);
            assert!(g2 <= 1.0 + k + 1e-6, "K = {k}, Nc = {nc}: g2 = {g2} above plateau");
        }
    }
}

/// The fitted decay rate is insensitive to widening the window once inside
/// the asymptotic regime.
#[test]
fn fit_is_stable_against_window_choice() {
    use photonstat_core::{fit_alpha, kn_series};
    let series = kn_series(0.4, 400).unwrap();
    let a = fit_alpha(&series, 50, 200).unwrap();
    let b = fit_alpha(&series, 100, 400).unwrap();
    assert!((a.s - b.s).abs() <= 1e-6, "S drifted: {} vs {}", a.s, b.s);
}
