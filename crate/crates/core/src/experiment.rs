//! The zero sum S = Σ_{T1<γ<T2} x^{1/2+iγ} ζ(1/2 + i(γ+y)) against its
//! main term (1/2π)(x^{-iy} - 1) Δ log T, nonvanishing of shifted zeta
//! values at zeros, and residual sweeps.

use crate::error::{Error, Result};
use crate::eval::{zeta, EvalConfig, EvalPoint};
use crate::numeric::{expi_product, pairwise_sum};
use crate::primes::{find_witness_prime, is_prime, script_l, theorem2_prime_range};
use crate::zeros::{find_zeros, ZeroTable};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Default magnitude above which ζ(ρ + iy) counts as nonzero.
pub const DEFAULT_NONVANISH_THRESHOLD: f64 = 1e-3;

/// Endpoints closer than this to an ordinate are moved.
pub const ENDPOINT_COLLISION: f64 = 1e-6;
pub const ENDPOINT_SHIFT: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "T2")]
    pub t2: f64,
    pub y: f64,
    pub x: u64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "Theta")]
    pub theta: f64,
    #[serde(rename = "Delta")]
    pub delta: f64,
    #[serde(rename = "T_bold")]
    pub t_bold: f64,
    #[serde(rename = "scriptL")]
    pub script_l: f64,
    pub epsilon: f64,
}

impl ExperimentSpec {
    /// Derives Δ, T, ℒ and ε. The standing hypotheses 2T1 > T2 and Θ ≥ 2
    /// are not enforced; see [`ExperimentSpec::advisories`].
    pub fn new(t1: f64, t2: f64, y: f64, x: u64, a: f64, c: f64, theta: f64) -> Result<Self> {
        if !(t1 > std::f64::consts::E) || !(t2 > t1) || !t2.is_finite() {
            return Err(Error::DomainError(format!(
                "need T2 > T1 > e, got T1 = {t1}, T2 = {t2}"
            )));
        }
        if y == 0.0 || !y.is_finite() {
            return Err(Error::DomainError("y must be a nonzero real".into()));
        }
        if !is_prime(x) {
            return Err(Error::DomainError(format!("x = {x} is not prime")));
        }
        if !(a > 0.0) || !(c > 0.0) || !theta.is_finite() {
            return Err(Error::DomainError("A and C must be positive, Theta finite".into()));
        }
        let t_bold = 0.5 * (t1 + t2);
        Ok(Self {
            t1,
            t2,
            y,
            x,
            a,
            c,
            theta,
            delta: t2 - t1,
            t_bold,
            script_l: script_l(t_bold),
            epsilon: epsilon(t1, c),
        })
    }

    /// Standing hypotheses that this spec does not meet.
    pub fn advisories(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(2.0 * self.t1 > self.t2) {
            out.push(format!("2*T1 > T2 fails ({} vs {})", 2.0 * self.t1, self.t2));
        }
        if self.theta < 2.0 {
            out.push(format!("Theta = {} is below 2", self.theta));
        }
        out.push(format!(
            "asymptotic regime needs Theta >= max(A + lambda + 2, 4A) = max({} + lambda, {}) with lambda unknown",
            self.a + 2.0,
            4.0 * self.a
        ));
        out
    }

    /// Δ log T / (log log T)^{1/2} + T ℒ^{-A}.
    pub fn normalizer(&self) -> f64 {
        let l = self.t_bold.ln();
        self.delta * l / l.ln().sqrt() + self.t_bold * self.script_l.powf(-self.a)
    }
}

/// ε = T^{-C / log log T}.
pub fn epsilon(t: f64, c: f64) -> f64 {
    (-c * t.ln() / t.ln().ln()).exp()
}

/// (1/2π)(x^{-iy} - 1)(T2 - T1) log((T1 + T2)/2).
pub fn main_term(x: u64, y: f64, t1: f64, t2: f64) -> Complex64 {
    let twist = expi_product(-y, (x as f64).ln()) - 1.0;
    twist * ((t2 - t1) * (0.5 * (t1 + t2)).ln() / (2.0 * PI))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSumReport {
    pub spec: ExperimentSpec,
    pub zero_count: usize,
    #[serde(rename = "S")]
    pub s: Complex64,
    #[serde(rename = "M")]
    pub m: Complex64,
    pub residual: Complex64,
    pub residual_abs: f64,
    pub normalizer: f64,
    pub ratio: f64,
    pub per_zero_breakdown: Option<Vec<(f64, Complex64)>>,
    /// |x^{-iy} - 1|.
    #[serde(default)]
    pub x_deviation: f64,
    /// Sum of the per-term evaluation error estimates.
    #[serde(default)]
    pub sum_error_estimate: f64,
    /// x is a witness prime and the residual is below the main term's size,
    /// so S cannot vanish.
    #[serde(default)]
    pub main_term_dominates: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

fn collides(zeros: &ZeroTable, t: f64) -> bool {
    let i = zeros.zeros.partition_point(|z| z.gamma < t);
    [i.wrapping_sub(1), i]
        .iter()
        .filter_map(|&k| zeros.zeros.get(k))
        .any(|z| (z.gamma - t).abs() < ENDPOINT_COLLISION)
}

/// Moves T1 down and T2 up by 1e-5 when either lies within 1e-6 of an
/// ordinate, and returns the adjusted spec with a note per move.
pub fn perturb_endpoints(spec: &ExperimentSpec, zeros: &ZeroTable) -> Result<(ExperimentSpec, Vec<String>)> {
    let mut t1 = spec.t1;
    let mut t2 = spec.t2;
    let mut notes = Vec::new();
    while collides(zeros, t1) {
        notes.push(format!("T1 = {t1} lies on an ordinate; moved to {}", t1 - ENDPOINT_SHIFT));
        t1 -= ENDPOINT_SHIFT;
    }
    while collides(zeros, t2) {
        notes.push(format!("T2 = {t2} lies on an ordinate; moved to {}", t2 + ENDPOINT_SHIFT));
        t2 += ENDPOINT_SHIFT;
    }
    if notes.is_empty() {
        return Ok((*spec, notes));
    }
    let s = ExperimentSpec::new(t1, t2, spec.y, spec.x, spec.a, spec.c, spec.theta)?;
    Ok((s, notes))
}

fn shifted_zeta(gamma: f64, y: f64, cfg: &EvalConfig) -> Result<(Complex64, f64)> {
    let v = zeta(EvalPoint::critical(gamma + y), cfg)
        .map_err(|e| Error::EvaluationFailure(format!("zeta(1/2 + i({gamma} + {y})): {e}")))?;
    Ok((v.value, v.abs_error_estimate))
}

/// The zero sum and its comparison with the main term.
pub fn zero_sum(spec: &ExperimentSpec, zeros: &ZeroTable, cfg: &EvalConfig) -> Result<ZeroSumReport> {
    zero_sum_detailed(spec, zeros, cfg, false)
}

/// As [`zero_sum`], optionally keeping each term. Terms are computed
/// concurrently and reduced by a pairwise sum in ordinate order, so the
/// result does not depend on the thread count.
pub fn zero_sum_detailed(
    spec: &ExperimentSpec,
    zeros: &ZeroTable,
    cfg: &EvalConfig,
    keep_terms: bool,
) -> Result<ZeroSumReport> {
    if !zeros.covers(spec.t1, spec.t2) {
        return Err(Error::IncompleteZeroTable {
            t_lo: spec.t1,
            t_hi: spec.t2,
        });
    }
    let (spec, mut notes) = perturb_endpoints(spec, zeros)?;
    if !zeros.covers(spec.t1, spec.t2) {
        return Err(Error::IncompleteZeroTable {
            t_lo: spec.t1,
            t_hi: spec.t2,
        });
    }
    let selected = zeros.open_interval(spec.t1, spec.t2);
    let ln_x = (spec.x as f64).ln();
    let sqrt_x = (spec.x as f64).sqrt();
    let terms: Vec<Result<(f64, Complex64, f64)>> = selected
        .par_iter()
        .map(|z| {
            let (v, err) = shifted_zeta(z.gamma, spec.y, cfg)?;
            let w = expi_product(z.gamma, ln_x) * sqrt_x;
            Ok((z.gamma, w * v, sqrt_x * err))
        })
        .collect();
    let mut values = Vec::with_capacity(terms.len());
    let mut gammas = Vec::with_capacity(terms.len());
    let mut err_sum = 0.0;
    for t in terms {
        let (g, v, e) = t?;
        gammas.push(g);
        values.push(v);
        err_sum += e;
    }
    let s = pairwise_sum(&values);
    let m = main_term(spec.x, spec.y, spec.t1, spec.t2);
    let residual = s - m;
    let normalizer = spec.normalizer();
    let ratio = residual.norm() / normalizer;
    let x_deviation = (expi_product(-spec.y, ln_x) - 1.0).norm();
    let dominates = x_deviation > FRAC_1_SQRT_2
        && residual.norm() + err_sum < m.norm();
    if dominates && s.norm() == 0.0 {
        notes.push("main term dominates but S = 0".into());
    }
    notes.extend(spec.advisories());
    if !zeros.close_pairs.is_empty() {
        notes.push(format!("{} close ordinate pairs in table", zeros.close_pairs.len()));
    }
    Ok(ZeroSumReport {
        spec,
        zero_count: values.len(),
        s,
        m,
        residual,
        residual_abs: residual.norm(),
        normalizer,
        ratio,
        per_zero_breakdown: keep_terms.then(|| gammas.into_iter().zip(values).collect()),
        x_deviation,
        sum_error_estimate: err_sum,
        main_term_dominates: dominates,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessResult {
    #[serde(rename = "T")]
    pub t: f64,
    pub y: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub epsilon: f64,
    pub window: (f64, f64),
    pub zeros_in_window: Vec<f64>,
    pub witness_gamma: Option<f64>,
    pub shifted_values: Vec<(f64, f64)>,
}

/// Searches [T, T(1+ε)] for a zero γ with |ζ(1/2 + i(γ+y))| above the
/// threshold.
pub fn theorem1_witness(t: f64, y: f64, c: f64, threshold: f64, cfg: &EvalConfig) -> Result<WitnessResult> {
    if !(t >= 50.0) || y == 0.0 || !y.is_finite() || !(c > 0.0) || !(threshold > 0.0) {
        return Err(Error::DomainError(
            "theorem1_witness needs T >= 50, y != 0, C > 0, threshold > 0".into(),
        ));
    }
    let eps = epsilon(t, c);
    let hi = t * (1.0 + eps);
    let table = find_zeros(t, hi, cfg)?;
    if table.is_empty() {
        return Err(Error::EmptyWindow { lo: t, hi });
    }
    let values: Vec<Result<(f64, f64)>> = table
        .zeros
        .par_iter()
        .map(|z| Ok((z.gamma, shifted_zeta(z.gamma, y, cfg)?.0.norm())))
        .collect();
    let shifted_values = values.into_iter().collect::<Result<Vec<_>>>()?;
    let witness_gamma = shifted_values
        .iter()
        .find(|&&(_, m)| m > threshold)
        .map(|&(g, _)| g);
    Ok(WitnessResult {
        t,
        y,
        c,
        epsilon: eps,
        window: (t, hi),
        zeros_in_window: table.gammas(),
        witness_gamma,
        shifted_values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct N0yCount {
    pub total: usize,
    pub nonvanishing: usize,
    pub flagged: Vec<f64>,
}

/// Counts zeros with γ ≤ T and those with |ζ(1/2 + i(γ+y))| > threshold.
pub fn n0y_count(t: f64, y: f64, threshold: f64, zeros: &ZeroTable, cfg: &EvalConfig) -> Result<N0yCount> {
    if !zeros.covers(0.0, t) {
        return Err(Error::IncompleteZeroTable { t_lo: 0.0, t_hi: t });
    }
    let upto: Vec<f64> = zeros
        .zeros
        .iter()
        .filter(|z| z.gamma <= t)
        .map(|z| z.gamma)
        .collect();
    let mags: Vec<Result<f64>> = upto
        .par_iter()
        .map(|&g| Ok(shifted_zeta(g, y, cfg)?.0.norm()))
        .collect();
    let mut flagged = Vec::new();
    let mut nonvanishing = 0;
    for (&g, m) in upto.iter().zip(mags) {
        if m? > threshold {
            nonvanishing += 1;
        } else {
            flagged.push(g);
        }
    }
    Ok(N0yCount {
        total: upto.len(),
        nonvanishing,
        flagged,
    })
}

/// x for a given T: the smallest prime in the prime range, or a witness
/// prime from max(T ℒ^{-Θ}, 2) when the range is empty.
pub fn select_x(t_bold: f64, y: f64, theta: f64) -> Result<(u64, Option<String>)> {
    match theorem2_prime_range(t_bold, y, theta) {
        Ok(r) => Ok((r.primes[0], None)),
        Err(Error::EmptyRange { lo, hi }) => {
            let start = lo.max(2.0);
            let w = find_witness_prime(y, start)?;
            Ok((
                w.p,
                Some(format!(
                    "prime range ({lo}, {hi}) empty; x = {} is the witness prime from t = {start}",
                    w.p
                )),
            ))
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub t: f64,
    pub outcome: Result<ZeroSumReport>,
}

/// One zero-sum report per T with T1 = T, T2 = T(1 + δ), C = A/2; failures
/// are kept per entry. Entries are ordered by T.
pub fn residual_sweep_with<F>(
    t_list: &[f64],
    y: f64,
    a: f64,
    theta: f64,
    delta_fraction: f64,
    cfg: &EvalConfig,
    zeros_for: F,
) -> Result<Vec<SweepEntry>>
where
    F: Fn(f64, f64) -> Result<ZeroTable>,
{
    if !(delta_fraction > 0.0 && delta_fraction < 0.5) {
        return Err(Error::DomainError("delta_fraction must lie in (0, 1/2)".into()));
    }
    if t_list.iter().any(|&t| !(t >= 100.0)) {
        return Err(Error::DomainError("every T must be at least 100".into()));
    }
    let mut ts = t_list.to_vec();
    ts.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(ts.len());
    for t in ts {
        let outcome = (|| {
            let t2 = t * (1.0 + delta_fraction);
            let t_bold = 0.5 * (t + t2);
            let (x, note) = select_x(t_bold, y, theta)?;
            let spec = ExperimentSpec::new(t, t2, y, x, a, 0.5 * a, theta)?;
            let zeros = zeros_for(t, t2)?;
            let mut report = zero_sum(&spec, &zeros, cfg)?;
            if let Some(n) = note {
                report.notes.insert(0, n);
            }
            Ok(report)
        })();
        out.push(SweepEntry { t, outcome });
    }
    Ok(out)
}

pub fn residual_sweep(
    t_list: &[f64],
    y: f64,
    a: f64,
    theta: f64,
    delta_fraction: f64,
    cfg: &EvalConfig,
) -> Result<Vec<SweepEntry>> {
    residual_sweep_with(t_list, y, a, theta, delta_fraction, cfg, |lo, hi| {
        find_zeros(lo, hi, cfg)
    })
}
