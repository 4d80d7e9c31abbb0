//! Command implementations. Each writes its CSV contract into the output
//! directory; figures are added only with `--svg`.

use photonstat_core as core;

use crate::output::{float_field, int_field, write_text, CsvFile};
use crate::svg::{Plot, Series};
use crate::{CliError, RunConfig};

const ROUTE_TOLERANCE: f64 = 1e-10;
const LN_10: f64 = std::f64::consts::LN_10;

/// Route cross-check over the configured K grid, n = 2..=6.
///
/// Exits with the check-failure code if any pairwise disagreement exceeds
/// `1e-10`. At K = 1 the determinant route is singular (sigma_f = 0) and
/// the closed form stands in for it, which is exact there.
pub fn table1(cfg: &RunConfig) -> Result<(), CliError> {
    let mut csv =
        CsvFile::create(&cfg.out_dir, "table1.csv", "K,n,Kn_table,Kn_closed,Kn_det,abs_max_diff")?;
    let mut worst: f64 = 0.0;
    for &k in &cfg.k_list {
        let model = core::SpectralModel::from_pairwise(k)?;
        for n in 2..=6u32 {
            let table = core::kn_table(n, k)?;
            let closed = core::kn_closed_form(n, k)?;
            let det = if k == 1.0 { closed } else { core::kn_determinant(n, &model)? };
            let diff = (table - closed)
                .abs()
                .max((closed - det).abs())
                .max((table - det).abs());
            worst = worst.max(diff);
            csv.row(&[
                float_field(k),
                int_field(n),
                float_field(table),
                float_field(closed),
                float_field(det),
                float_field(diff),
            ])?;
        }
    }
    csv.finish()?;
    if worst > ROUTE_TOLERANCE {
        return Err(CliError::Check(format!(
            "K_n routes disagree by {worst:.3e} (tolerance {ROUTE_TOLERANCE:.0e})"
        )));
    }
    Ok(())
}

pub fn kn_curve(cfg: &RunConfig) -> Result<(), CliError> {
    let mut csv = CsvFile::create(&cfg.out_dir, "kn_curve.csv", "K,n,Kn,ln_Kn")?;
    let mut figure = Vec::new();
    for &k in &cfg.k_list {
        let mut points = Vec::new();
        for n in 1..=cfg.n_max {
            let ln_kn = core::ln_kn_closed_form(n, k)?;
            csv.row(&[
                float_field(k),
                int_field(n),
                float_field(ln_kn.exp()),
                float_field(ln_kn),
            ])?;
            points.push((f64::from(n), ln_kn / LN_10));
        }
        figure.push(Series { label: format!("K = {k}"), points });
    }
    csv.finish()?;
    if cfg.emit_svg {
        let plot = Plot {
            title: "Multi-photon indistinguishability".into(),
            x_label: "photon number n".into(),
            y_label: "log10 K_n".into(),
            series: figure,
        };
        write_text(&cfg.out_dir, "fig2a.svg", &plot.render())?;
    }
    Ok(())
}

pub fn bunching_curve(cfg: &RunConfig) -> Result<(), CliError> {
    let mut csv = CsvFile::create(
        &cfg.out_dir,
        "bunching_curve.csv",
        "K,n,log_Bn,log_Bn_minus_log_nfact",
    )?;
    let mut figure = Vec::new();
    for &k in &cfg.k_list {
        let table = core::bunching_series(k, cfg.n_max)?;
        let mut points = Vec::new();
        let mut ln_fact = 0.0;
        for n in 0..=cfg.n_max {
            if n > 0 {
                ln_fact += f64::from(n).ln();
            }
            let log_b = table.log_b(n).expect("table covers n_max").ln();
            csv.row(&[
                float_field(k),
                int_field(n),
                float_field(log_b),
                float_field(log_b - ln_fact),
            ])?;
            points.push((f64::from(n), (log_b - ln_fact) / LN_10));
        }
        figure.push(Series { label: format!("K = {k}"), points });
    }
    csv.finish()?;
    if cfg.emit_svg {
        let plot = Plot {
            title: "Photon bunching coefficient".into(),
            x_label: "photon number n".into(),
            y_label: "log10 (B_n / n!)".into(),
            series: figure,
        };
        write_text(&cfg.out_dir, "fig2c.svg", &plot.render())?;
    }
    Ok(())
}

pub fn fit(cfg: &RunConfig) -> Result<(), CliError> {
    let mut csv =
        CsvFile::create(&cfg.out_dir, "fit.csv", "K,alpha_fit,S_fit,S_analytic,residual")?;
    let mut fitted = Vec::new();
    for &k in &cfg.k_list {
        let series = core::kn_series(k, cfg.fit_hi)?;
        let fit = core::fit_alpha(&series, cfg.fit_lo, cfg.fit_hi)?;
        let analytic = core::bunching_factor(k)?;
        csv.row(&[
            float_field(k),
            float_field(fit.alpha),
            float_field(fit.s),
            float_field(analytic),
            float_field(fit.residual),
        ])?;
        fitted.push((k, fit.s));
    }
    csv.finish()?;
    if cfg.emit_svg {
        let analytic_curve: Vec<(f64, f64)> = (0..=100)
            .map(|i| {
                let k = f64::from(i) / 100.0;
                (k, core::bunching_factor(k).expect("K in range"))
            })
            .collect();
        let plot = Plot {
            title: "Photon bunching factor".into(),
            x_label: "pairwise indistinguishability K".into(),
            y_label: "S = exp(-alpha)".into(),
            series: vec![
                Series { label: "2K/(1+K)".into(), points: analytic_curve },
                Series { label: "fit".into(), points: fitted },
            ],
        };
        write_text(&cfg.out_dir, "fig2b.svg", &plot.render())?;
    }
    Ok(())
}

fn log_grid(min: f64, max: f64, points: u32) -> Vec<f64> {
    let ratio = (max / min).powf(1.0 / f64::from(points - 1));
    (0..points).map(|i| min * ratio.powi(i as i32)).collect()
}

enum ScanQuantity {
    G2,
    Nbar,
}

/// Shared Nc-scan driver for `g2-scan` and `nbar-scan`. Per-cell failures
/// leave the value field empty and are collected into `diagnostics.txt`
/// instead of aborting the remaining K values.
fn nc_scan(cfg: &RunConfig, quantity: ScanQuantity) -> Result<(), CliError> {
    let (file, column, figure_name, title) = match quantity {
        ScanQuantity::G2 => ("g2_scan.csv", "g2", "fig3a.svg", "Second-order coherence"),
        ScanQuantity::Nbar => ("nbar_scan.csv", "nbar", "fig3b.svg", "Mean photon number"),
    };
    let mut csv = CsvFile::create(&cfg.out_dir, file, &format!("K,Nc,{column}"))?;
    let grid = log_grid(cfg.nc_min, cfg.nc_max, cfg.nc_points);
    let mut diagnostics = Vec::new();
    let mut figure = Vec::new();
    let mut wrote_value = false;

    for &k in &cfg.k_list {
        let mut points = Vec::new();
        let table = match core::bunching_series(k, cfg.n_emitters) {
            Ok(t) => t,
            Err(err) => {
                for &nc in &grid {
                    csv.row(&[float_field(k), float_field(nc), String::new()])?;
                }
                diagnostics.push(format!("K={k}: {err}"));
                continue;
            }
        };
        for &nc in &grid {
            let cell = core::EnsembleParams::new(cfg.n_emitters, nc / f64::from(cfg.n_emitters), k)
                .and_then(|params| core::ensemble_distribution(&params, &table))
                .and_then(|dist| match quantity {
                    ScanQuantity::G2 => core::second_order_coherence(&dist),
                    ScanQuantity::Nbar => Ok(core::mean_photon_number(&dist)),
                });
            match cell {
                Ok(value) => {
                    csv.row(&[float_field(k), float_field(nc), float_field(value)])?;
                    let y = match quantity {
                        ScanQuantity::G2 => value,
                        ScanQuantity::Nbar => value.log10(),
                    };
                    points.push((nc.log10(), y));
                    wrote_value = true;
                }
                Err(err) => {
                    csv.row(&[float_field(k), float_field(nc), String::new()])?;
                    diagnostics.push(format!("K={k} Nc={nc}: {err}"));
                }
            }
        }
        figure.push(Series { label: format!("K = {k}"), points });
    }
    csv.finish()?;

    if !diagnostics.is_empty() {
        write_text(&cfg.out_dir, "diagnostics.txt", &(diagnostics.join("\n") + "\n"))?;
        if !wrote_value {
            return Err(CliError::Domain("every scan cell failed; see diagnostics.txt".into()));
        }
    }
    if cfg.emit_svg {
        let plot = Plot {
            title: title.into(),
            x_label: "log10 Nc".into(),
            y_label: match quantity {
                ScanQuantity::G2 => "g2(0)".into(),
                ScanQuantity::Nbar => "log10 mean photon number".into(),
            },
            series: figure,
        };
        write_text(&cfg.out_dir, figure_name, &plot.render())?;
    }
    Ok(())
}

pub fn g2_scan(cfg: &RunConfig) -> Result<(), CliError> {
    nc_scan(cfg, ScanQuantity::G2)
}

pub fn nbar_scan(cfg: &RunConfig) -> Result<(), CliError> {
    nc_scan(cfg, ScanQuantity::Nbar)
}

/// Transition location per K, with per-K failures recorded rather than
/// aborting the rest of the grid.
pub fn transition(cfg: &RunConfig) -> Result<(), CliError> {
    let mut csv = CsvFile::create(&cfg.out_dir, "transition.csv", "K,Nc_star,one_over_S,ratio")?;
    let mut diagnostics = Vec::new();
    let mut any_ok = false;
    for &k in &cfg.k_list {
        match core::transition_point(k, cfg.n_emitters) {
            Ok(estimate) => {
                csv.row(&[
                    float_field(k),
                    float_field(estimate.nc_star),
                    float_field(estimate.one_over_s),
                    float_field(estimate.nc_star / estimate.one_over_s),
                ])?;
                any_ok = true;
            }
            Err(err) => {
                csv.row(&[float_field(k), String::new(), String::new(), String::new()])?;
                diagnostics.push(format!("K={k}: {err}"));
            }
        }
    }
    csv.finish()?;
    if !diagnostics.is_empty() {
        write_text(&cfg.out_dir, "diagnostics.txt", &(diagnostics.join("\n") + "\n"))?;
        if !any_ok {
            return Err(CliError::Domain("every transition scan failed; see diagnostics.txt".into()));
        }
    }
    Ok(())
}

/// Exact distribution against the geometric modified Bose-Einstein form at
/// one (K, Nc) point. Refuses the divergent regime `Nc*S >= 1` outright.
pub fn mbe_compare(cfg: &RunConfig) -> Result<(), CliError> {
    let k = cfg.k_list[0];
    let s = core::bunching_factor(k)?;
    let nc_s = cfg.nc * s;
    if nc_s >= 1.0 {
        return Err(CliError::Domain(format!(
            "geometric form diverges: Nc*S = {nc_s} >= 1 (Nc = {}, S = {s})",
            cfg.nc
        )));
    }
    let table = core::bunching_series(k, cfg.n_emitters)?;
    let params =
        core::EnsembleParams::new(cfg.n_emitters, cfg.nc / f64::from(cfg.n_emitters), k)?;
    let dist = core::ensemble_distribution(&params, &table)?;

    let mut csv =
        CsvFile::create(&cfg.out_dir, "mbe_compare.csv", "n,P_exact,P_mbe,ratio_exact,NcS")?;
    for n in 0..=50u32 {
        let p_exact = dist.prob(n).expect("N >= 52 validated");
        let p_mbe = core::modified_bose_einstein(cfg.nc, s, n)?;
        let ratio = (dist.log_prob(n + 1).expect("in range")
            - dist.log_prob(n).expect("in range"))
        .exp();
        csv.row(&[
            int_field(n),
            float_field(p_exact),
            float_field(p_mbe),
            float_field(ratio),
            float_field(nc_s),
        ])?;
    }
    csv.finish()
}

/// Monte Carlo estimates of K_n against the closed form, n = 2..=6.
pub fn mc_validate(cfg: &RunConfig) -> Result<(), CliError> {
    let mut csv = CsvFile::create(
        &cfg.out_dir,
        "mc_validate.csv",
        "n,K,mc_mean,std_error,analytic,z_score",
    )?;
    let mut cell = 0u64;
    for &k in &cfg.k_list {
        let model = core::SpectralModel::from_pairwise(k)?;
        for n in 2..=6u32 {
            // Independent ChaCha key per cell, derived from the master seed.
            let est = core::mc_kn_estimate(n, &model, cfg.samples, cfg.seed.wrapping_add(cell))?;
            cell += 1;
            let analytic = core::kn_closed_form(n, k)?;
            let z = if est.std_error == 0.0 {
                if est.mean == analytic {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (est.mean - analytic) / est.std_error
            };
            csv.row(&[
                int_field(n),
                float_field(k),
                float_field(est.mean),
                float_field(est.std_error),
                float_field(analytic),
                float_field(z),
            ])?;
        }
    }
    csv.finish()
}
