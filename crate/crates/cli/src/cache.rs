//! On-disk zero tables named `zeros_<t_lo>_<t_hi>.txt`.

use std::path::{Path, PathBuf};
use zgl::eval::EvalConfig;
use zgl::zeros::{load_zero_table, ZeroTable};
use zgl::{Error, Result};

pub fn cache_path(dir: &Path, t_lo: f64, t_hi: f64) -> PathBuf {
    dir.join(format!("zeros_{t_lo}_{t_hi}.txt"))
}

fn parse_name(name: &str) -> Option<(f64, f64)> {
    let rest = name.strip_prefix("zeros_")?.strip_suffix(".txt")?;
    let (lo, hi) = rest.split_once('_')?;
    Some((lo.parse().ok()?, hi.parse().ok()?))
}

pub fn cache_zeros(dir: &Path, t_lo: f64, t_hi: f64, table: &ZeroTable) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = cache_path(dir, t_lo, t_hi);
    table.write(&path)?;
    Ok(path)
}

/// Loads the file for exactly [t_lo, t_hi], or else the narrowest cached
/// range containing it. Every ordinate is re-checked against Z and must
/// satisfy |Z(γ)| ≤ `tolerance`.
pub fn load_cached(dir: &Path, t_lo: f64, t_hi: f64, tolerance: f64, cfg: &EvalConfig) -> Result<ZeroTable> {
    let exact = cache_path(dir, t_lo, t_hi);
    let path = if exact.is_file() {
        exact
    } else {
        let mut best: Option<(f64, PathBuf)> = None;
        if let Ok(entries) = std::fs::read_dir(dir) {
            for e in entries.flatten() {
                let name = e.file_name();
                let Some((lo, hi)) = name.to_str().and_then(parse_name) else {
                    continue;
                };
                if lo <= t_lo && hi >= t_hi && best.as_ref().map_or(true, |b| hi - lo < b.0) {
                    best = Some((hi - lo, e.path()));
                }
            }
        }
        match best {
            Some((_, p)) => p,
            None => {
                return Err(Error::CacheMiss(format!(
                    "no cached zeros for [{t_lo}, {t_hi}] in {}",
                    dir.display()
                )))
            }
        }
    };
    let table = load_zero_table(&path, t_lo, t_hi, cfg).map_err(|e| match e {
        Error::OrderViolation { .. } | Error::ParseError { .. } => Error::ValidationFailure { ordinates: Vec::new() },
        other => other,
    })?;
    let bad: Vec<f64> = table
        .zeros
        .iter()
        .filter(|z| !(z.refinement_residual <= tolerance))
        .map(|z| z.gamma)
        .collect();
    if !bad.is_empty() {
        return Err(Error::ValidationFailure { ordinates: bad });
    }
    Ok(table)
}
