//! Config resolution: command-line flags override config-file entries,
//! which override built-in defaults.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::cli::{CommandKind, CommonArgs};
use crate::CliError;

/// Fully resolved and validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub kind: CommandKind,
    pub k_list: Vec<f64>,
    pub n_emitters: u32,
    pub n_max: u32,
    pub nc_min: f64,
    pub nc_max: f64,
    pub nc_points: u32,
    pub fit_lo: u32,
    pub fit_hi: u32,
    pub samples: u64,
    pub seed: u64,
    pub nc: f64,
    pub out_dir: PathBuf,
    pub emit_svg: bool,
}

const KNOWN_KEYS: &[&str] = &[
    "K", "N", "n_max", "nc_range", "fit_window", "samples", "seed", "nc", "out", "svg",
];

fn default_k_list(kind: CommandKind) -> Vec<f64> {
    match kind {
        CommandKind::MbeCompare => vec![0.5],
        CommandKind::McValidate => vec![0.3, 0.5, 0.8],
        _ => (1..=10).map(|i| f64::from(i) / 10.0).collect(),
    }
}

fn parse_file(path: &PathBuf) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "{}:{}: expected 'key = value'",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!(
                "{}:{}: unknown key '{key}'",
                path.display(),
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn parse_k_list(text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: f64 = part
            .parse()
            .map_err(|_| CliError::Config(format!("invalid K value '{part}'")))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Config("K list is empty".into()));
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    Ok(out)
}

fn parse_nc_range(text: &str) -> Result<(f64, f64, u32), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!("nc range '{text}' is not MIN:MAX:POINTS")));
    }
    let min: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("invalid nc minimum '{}'", parts[0])))?;
    let max: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("invalid nc maximum '{}'", parts[1])))?;
    let points: u32 = parts[2]
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("invalid nc point count '{}'", parts[2])))?;
    Ok((min, max, points))
}

fn parse_window(text: &str) -> Result<(u32, u32), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 {
        return Err(CliError::Config(format!("fit window '{text}' is not LO:HI")));
    }
    let lo: u32 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("invalid window start '{}'", parts[0])))?;
    let hi: u32 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("invalid window end '{}'", parts[1])))?;
    Ok((lo, hi))
}

fn parse_from<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    match map.get(key) {
        None => Ok(None),
        Some(text) => text
            .parse()
            .map(Some)
            .map_err(|_| CliError::Config(format!("invalid value '{text}' for key '{key}'"))),
    }
}

/// Merges flags, config file, and defaults, then validates every field.
pub fn resolve(args: &CommonArgs, kind: CommandKind) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(path) => parse_file(path)?,
        None => BTreeMap::new(),
    };

    let k_text = args.k.clone().or_else(|| file.get("K").cloned());
    let k_list = match k_text {
        Some(text) => parse_k_list(&text)?,
        None => default_k_list(kind),
    };

    let n_emitters = args.n_emitters.or(parse_from(&file, "N")?).unwrap_or(1000);
    let n_max = args.n_max.or(parse_from(&file, "n_max")?).unwrap_or(1000);
    let nc_range_text = args.nc_range.clone().or_else(|| file.get("nc_range").cloned());
    let (nc_min, nc_max, nc_points) = match nc_range_text {
        Some(text) => parse_nc_range(&text)?,
        None => (1e-4, 1e4, 200),
    };
    let window_text = args.fit_window.clone().or_else(|| file.get("fit_window").cloned());
    let (fit_lo, fit_hi) = match window_text {
        Some(text) => parse_window(&text)?,
        None => (50, 200),
    };
    let samples = args.samples.or(parse_from(&file, "samples")?).unwrap_or(1_000_000);
    let seed = args.seed.or(parse_from(&file, "seed")?).unwrap_or(42);
    let nc = args.nc.or(parse_from(&file, "nc")?).unwrap_or(0.75);
    let out_dir = args
        .out
        .clone()
        .or_else(|| file.get("out").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let emit_svg = args.svg || matches!(file.get("svg").map(String::as_str), Some("true" | "1"));

    let cfg = RunConfig {
        kind,
        k_list,
        n_emitters,
        n_max,
        nc_min,
        nc_max,
        nc_points,
        fit_lo,
        fit_hi,
        samples,
        seed,
        nc,
        out_dir,
        emit_svg,
    };
    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    let k_allows_zero = matches!(cfg.kind, CommandKind::BunchingCurve);
    for &k in &cfg.k_list {
        let ok = if k_allows_zero { (0.0..=1.0).contains(&k) } else { k > 0.0 && k <= 1.0 };
        if !ok || !k.is_finite() {
            return Err(CliError::Config(format!("K = {k} outside the valid range")));
        }
    }
    if cfg.n_emitters < 1 || cfg.n_emitters > 20_000 {
        return Err(CliError::Config("N must lie in 1..=20000".into()));
    }
    if cfg.n_max < 2 || cfg.n_max > 20_000 {
        return Err(CliError::Config("n-max must lie in 2..=20000".into()));
    }
    if !cfg.nc_min.is_finite() || !cfg.nc_max.is_finite() || cfg.nc_min <= 0.0 || cfg.nc_max <= cfg.nc_min
    {
        return Err(CliError::Config("nc range must satisfy 0 < MIN < MAX".into()));
    }
    if cfg.nc_points < 2 || cfg.nc_points > 100_000 {
        return Err(CliError::Config("nc range needs 2..=100000 points".into()));
    }
    if cfg.fit_lo < 2 || cfg.fit_lo + 2 > cfg.fit_hi {
        return Err(CliError::Config(
            "fit window must satisfy 2 <= LO and LO + 2 <= HI".into(),
        ));
    }
    if matches!(cfg.kind, CommandKind::Fit) && cfg.fit_hi > cfg.n_max {
        return Err(CliError::Config("fit window end exceeds n-max".into()));
    }
    if cfg.samples < 1000 {
        return Err(CliError::Config("samples must be >= 1000".into()));
    }
    if !cfg.nc.is_finite() || cfg.nc <= 0.0 {
        return Err(CliError::Config("nc must be positive and finite".into()));
    }
    if matches!(cfg.kind, CommandKind::MbeCompare) && cfg.n_emitters < 52 {
        return Err(CliError::Config("mbe-compare needs N >= 52 to tabulate n <= 50".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve() {
        let cfg = resolve(&CommonArgs::default(), CommandKind::G2Scan).unwrap();
        assert_eq!(cfg.k_list.len(), 10);
        assert_eq!(cfg.n_emitters, 1000);
        assert_eq!(cfg.nc_points, 200);
        assert_eq!((cfg.fit_lo, cfg.fit_hi), (50, 200));
        assert!(!cfg.emit_svg);
    }

    #[test]
    fn k_list_is_sorted_and_deduplicated() {
        let ks = parse_k_list("0.9, 0.1,0.5,0.1").unwrap();
        assert_eq!(ks, vec![0.1, 0.5, 0.9]);
    }

    #[test]
    fn invalid_k_rejected() {
        let args = CommonArgs { k: Some("1.5".into()), ..Default::default() };
        assert!(matches!(resolve(&args, CommandKind::Table1), Err(CliError::Config(_))));
        let args = CommonArgs { k: Some("0".into()), ..Default::default() };
        assert!(resolve(&args, CommandKind::Table1).is_err());
        // bunching-curve admits K = 0
        let args = CommonArgs { k: Some("0".into()), ..Default::default() };
        assert!(resolve(&args, CommandKind::BunchingCurve).is_ok());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_nc_range("1e-4:1e4:200").unwrap(), (1e-4, 1e4, 200));
        assert!(parse_nc_range("1:2").is_err());
        assert_eq!(parse_window("50:200").unwrap(), (50, 200));
        assert!(parse_window("50").is_err());
    }
}
