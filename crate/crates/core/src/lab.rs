//! Numerical checks of auxiliary estimates: a stationary-phase integral,
//! its shifted 𝒳 variant, the local expansion of ζ'/ζ, the asymptotic form
//! of 𝒳, a growth scan of |ζ|, and three explicit sums over D_y(n).
//!
//! Each check reports the observed quantity against the estimate's
//! envelope taken with constant 1, and passes when the ratio is within the
//! configured slack.

use crate::arith::{coeff_dy, lambda_sieve, log_tail_bound};
use crate::error::{Error, Result};
use crate::eval::{chi_value, digamma, logderiv_zeta, zeta, EvalConfig, EvalPoint};
use crate::numeric::{expi_product, reduce_angle, CompensatedComplex, CompensatedSum};
use crate::quad::integrate;
use crate::zeros::ZeroTable;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

pub const DEFAULT_SLACK: f64 = 5.0;

/// Quadrature tolerance relative to the envelope of the check.
const QUAD_REL_TOL: f64 = 1e-8;

/// Minimum distance from s to a zero in [`mv_local_check`].
const MV_ZERO_DISTANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    SpIntegral,
    CggIntegral,
    MvLocal,
    ChiAsym,
    LindelofScan,
    SeriesBound,
    TechnicalBound,
    SummationBound,
    DirichletConsistency,
}

impl CheckId {
    pub const LEMMA_CHECKS: [CheckId; 8] = [
        CheckId::SpIntegral,
        CheckId::CggIntegral,
        CheckId::MvLocal,
        CheckId::ChiAsym,
        CheckId::LindelofScan,
        CheckId::SeriesBound,
        CheckId::TechnicalBound,
        CheckId::SummationBound,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::SpIntegral => "sp_integral",
            CheckId::CggIntegral => "cgg_integral",
            CheckId::MvLocal => "mv_local",
            CheckId::ChiAsym => "chi_asym",
            CheckId::LindelofScan => "lindelof_scan",
            CheckId::SeriesBound => "series_bound",
            CheckId::TechnicalBound => "technical_bound",
            CheckId::SummationBound => "summation_bound",
            CheckId::DirichletConsistency => "dirichlet_consistency",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::LEMMA_CHECKS
            .iter()
            .chain(std::iter::once(&CheckId::DirichletConsistency))
            .copied()
            .find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticSpec {
    pub check_id: CheckId,
    pub params: BTreeMap<String, f64>,
}

impl DiagnosticSpec {
    pub fn new(check_id: CheckId, params: &[(&str, f64)]) -> Self {
        Self {
            check_id,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    fn get(&self, key: &str) -> Result<f64> {
        self.params.get(key).copied().ok_or_else(|| {
            Error::DomainError(format!("{} needs parameter {key}", self.check_id.as_str()))
        })
    }

    fn get_or(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub check_id: CheckId,
    pub params: BTreeMap<String, f64>,
    pub observed: f64,
    pub predicted_bound: f64,
    pub ratio: f64,
    pub pass: bool,
    pub details: String,
}

fn report(
    check_id: CheckId,
    params: &[(&str, f64)],
    observed: f64,
    predicted_bound: f64,
    slack: f64,
    details: String,
) -> DiagnosticReport {
    let ratio = observed / predicted_bound;
    DiagnosticReport {
        check_id,
        params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        observed,
        predicted_bound,
        ratio,
        pass: ratio <= slack,
        details,
    }
}

/// 𝟙(a, b; u) = 1 iff a < u ≤ b.
pub fn indicator(a: f64, b: f64, u: f64) -> f64 {
    if a < u && u <= b {
        1.0
    } else {
        0.0
    }
}

/// a^{σ-1/2} + a^{σ+1/2}/(|a-u| + a^{1/2}) + b^{σ+1/2}/(|b-u| + b^{1/2}).
pub fn sp_envelope(a: f64, b: f64, sigma: f64, u: f64) -> f64 {
    a.powf(sigma - 0.5)
        + a.powf(sigma + 0.5) / ((a - u).abs() + a.sqrt())
        + b.powf(sigma + 0.5) / ((b - u).abs() + b.sqrt())
}

/// (2π)^{1-σ} u^σ e^{(u - π/4)i} (log(u/2π))^m.
pub fn sp_main_term(sigma: f64, u: f64, m: u32) -> Complex64 {
    let mag = (2.0 * PI).powf(1.0 - sigma) * u.powf(sigma) * (u / (2.0 * PI)).ln().powi(m as i32);
    Complex64::from_polar(mag, reduce_angle(u, -PI / 4.0))
}

/// ∫_a^b exp(-it log(t/(ue))) (t/2π)^{σ-1/2} (log(t/2π))^m dt.
pub fn sp_integral(a: f64, b: f64, sigma: f64, u: f64, m: u32, tol: f64) -> Result<(Complex64, f64)> {
    let ln_ue = u.ln() + 1.0;
    let f = move |t: f64| {
        let amp = (t / (2.0 * PI)).powf(sigma - 0.5) * (t / (2.0 * PI)).ln().powi(m as i32);
        expi_product(-t, t.ln() - ln_ue) * amp
    };
    let r = integrate(f, a, b, |t| (t / u).ln(), tol)?;
    Ok((r.value, r.error))
}

pub fn sp_integral_check(a: f64, b: f64, sigma: f64, u: f64, m: u32, slack: f64) -> Result<DiagnosticReport> {
    if !(a >= 10.0 && b > a && b <= 10.0 * a) || !(0.1..=10.0).contains(&sigma) || !(u > 0.0) || m > 1 {
        return Err(Error::DomainError(
            "sp_integral needs 10 <= a < b <= 10a, sigma in [0.1, 10], u > 0, m in {0, 1}".into(),
        ));
    }
    let env = sp_envelope(a, b, sigma, u) * a.ln().powi(m as i32);
    let (value, qerr) = sp_integral(a, b, sigma, u, m, QUAD_REL_TOL * env)?;
    let main = sp_main_term(sigma, u, m) * indicator(a, b, u);
    let rem = (value - main).norm();
    Ok(report(
        CheckId::SpIntegral,
        &[("a", a), ("b", b), ("sigma", sigma), ("u", u), ("m", m as f64)],
        rem,
        env,
        slack,
        format!("integral {value}, main term {main}, quadrature error {qerr:e}"),
    ))
}

/// g_j(v): 1, log(πv) - πi/2, log(πv) + πi/2 for j = 0, +1, -1.
pub fn cgg_g(j: i32, v: f64) -> Complex64 {
    match j {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new((PI * v).ln(), -0.5 * PI),
        _ => Complex64::new((PI * v).ln(), 0.5 * PI),
    }
}

/// f_j(s): 1, ψ(s/2), ψ((1-s)/2) for j = 0, +1, -1.
pub fn cgg_f(j: i32, s: Complex64) -> Result<Complex64> {
    match j {
        0 => Ok(Complex64::new(1.0, 0.0)),
        1 => digamma(EvalPoint::from_complex(s * 0.5)),
        _ => digamma(EvalPoint::from_complex((1.0 - s) * 0.5)),
    }
}

/// (log T'_1)^{|j|} v^{-c} {T'_1^{c-1/2} + T'_1^{c+1/2}/(|T'_1 - 2πv| + T'_1^{1/2})
/// + T'_2^{c+1/2}/(|T'_2 - 2πv| + T'_2^{1/2})}.
pub fn cgg_envelope(c: f64, t1p: f64, t2p: f64, v: f64, j: i32) -> f64 {
    let u = 2.0 * PI * v;
    t1p.ln().powi(j.abs()) * v.powf(-c) * sp_envelope(t1p, t2p, c, u)
}

/// (1/2πi) ∫_{c-iT2}^{c-iT1} 𝒳(1-s+iy) f_j(s) v^{-s} ds
/// = (1/2π) ∫_{T1}^{T2} 𝒳(1-c+i(τ+y)) f_j(c-iτ) v^{-c+iτ} dτ.
pub fn cgg_integral(c: f64, t1: f64, t2: f64, y: f64, v: f64, j: i32, tol: f64) -> Result<(Complex64, f64)> {
    let ln_v = v.ln();
    let vc = v.powf(-c);
    let f = move |tau: f64| -> Complex64 {
        let s = Complex64::new(c, -tau);
        let chi = chi_value(Complex64::new(1.0 - c, tau + y)).map(|r| r.0);
        let fj = cgg_f(j, s);
        match (chi, fj) {
            (Ok(x), Ok(g)) => x * g * expi_product(tau, ln_v) * (vc / (2.0 * PI)),
            _ => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let rate = move |tau: f64| ((tau + y).abs() / (2.0 * PI * v)).ln();
    let r = integrate(f, t1, t2, rate, 2.0 * PI * tol)?;
    if !r.value.re.is_finite() || !r.value.im.is_finite() {
        return Err(Error::EvaluationFailure("cgg integrand is not finite".into()));
    }
    Ok((r.value, r.error / (2.0 * PI)))
}

pub fn cgg_integral_check(c: f64, t1: f64, t2: f64, y: f64, v: f64, j: i32, slack: f64) -> Result<DiagnosticReport> {
    if !(2.0 * t1 > t2 && t2 > t1 && t1 >= 10.0 * (y.abs() + 1.0)) || !(0.5..=10.0).contains(&c) || !(v > 0.0) || !(-1..=1).contains(&j) {
        return Err(Error::DomainError(
            "cgg_integral needs 2T1 > T2 > T1 >= 10(|y|+1), c in [1/2, 10], v > 0, j in {-1, 0, 1}".into(),
        ));
    }
    let (t1p, t2p) = (t1 + y, t2 + y);
    let env = cgg_envelope(c, t1p, t2p, v, j);
    let (value, qerr) = cgg_integral(c, t1, t2, y, v, j, QUAD_REL_TOL * env)?;
    let main = expi_product(-y, v.ln()) * expi_product(2.0 * PI, v) * cgg_g(j, v) * indicator(t1p, t2p, 2.0 * PI * v);
    let rem = (value - main).norm();
    Ok(report(
        CheckId::CggIntegral,
        &[("c", c), ("T1", t1), ("T2", t2), ("y", y), ("v", v), ("j", j as f64)],
        rem,
        env,
        slack,
        format!("integral {value}, main term {main}, quadrature error {qerr:e}"),
    ))
}

/// |ζ'/ζ(s) - Σ_{|γ-t|<1} 1/(s-ρ)| against log t.
pub fn mv_local_check(sigma: f64, t: f64, zeros: &ZeroTable, cfg: &EvalConfig, slack: f64) -> Result<DiagnosticReport> {
    if !(-1.0..=2.0).contains(&sigma) || !(t >= 10.0) {
        return Err(Error::DomainError("mv_local needs sigma in [-1, 2] and t >= 10".into()));
    }
    if !zeros.covers(t - 2.0, t + 2.0) {
        return Err(Error::MissingZeroCoverage {
            need_lo: t - 2.0,
            need_hi: t + 2.0,
            have_lo: zeros.t_min,
            have_hi: zeros.t_max,
        });
    }
    let s = Complex64::new(sigma, t);
    let mut near = Complex64::new(0.0, 0.0);
    let mut count = 0;
    for z in zeros.open_interval(t - 2.0, t + 2.0) {
        let rho = Complex64::new(0.5, z.gamma);
        let d = (s - rho).norm();
        if d < MV_ZERO_DISTANCE {
            return Err(Error::ZeroProximity { gamma: z.gamma, distance: d });
        }
        if (z.gamma - t).abs() < 1.0 {
            near += (s - rho).inv();
            count += 1;
        }
    }
    let ld = logderiv_zeta(EvalPoint::new(sigma, t)?, zeros, cfg)?;
    let observed = (ld.value - near).norm();
    Ok(report(
        CheckId::MvLocal,
        &[("sigma", sigma), ("t", t)],
        observed,
        t.ln(),
        slack,
        format!("zeta'/zeta = {}, {count} zeros within 1, near-zero sum {near}", ld.value),
    ))
}

/// t |𝒳(1-σ+it) / (e^{πi/4} e^{-it log(t/2πe)} (t/2π)^{σ-1/2}) - 1|.
pub fn chi_asym_defect(sigma: f64, t: f64) -> Result<f64> {
    let s = Complex64::new(1.0 - sigma, t);
    let (chi, _) = chi_value(s)?;
    let ln_chi = chi.ln();
    let x = t / (2.0 * PI);
    let asym_re = (sigma - 0.5) * x.ln();
    let asym_im = PI / 4.0 - t * (x.ln() - 1.0);
    let d = Complex64::new(ln_chi.re - asym_re, reduce_angle(ln_chi.im - asym_im, 0.0));
    Ok(t * (d.exp() - 1.0).norm())
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| (lo.ln() + (hi / lo).ln() * k as f64 / (n - 1) as f64).exp())
        .collect()
}

fn chi_asym(spec: &DiagnosticSpec, slack: f64) -> Result<DiagnosticReport> {
    let sigma = spec.get("sigma")?;
    let ts = match spec.params.get("t") {
        Some(&t) => vec![t],
        None => grid(spec.get("t_lo")?, spec.get("t_hi")?, spec.get_or("samples", 50.0) as usize),
    };
    if ts.iter().any(|&t| !(t >= 1.0)) {
        return Err(Error::DomainError("chi_asym needs t >= 1".into()));
    }
    let vals = ts
        .par_iter()
        .map(|&t| chi_asym_defect(sigma, t))
        .collect::<Result<Vec<f64>>>()?;
    let (i, worst) = vals
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    Ok(report(
        CheckId::ChiAsym,
        &spec.params.iter().map(|(k, v)| (k.as_str(), *v)).collect::<Vec<_>>(),
        worst,
        1.0,
        slack,
        format!("max over {} heights at t = {}", ts.len(), ts[i]),
    ))
}

fn lindelof_scan(spec: &DiagnosticSpec, cfg: &EvalConfig) -> Result<DiagnosticReport> {
    let lo = spec.get("t_lo")?;
    let hi = spec.get("t_hi")?;
    let n = spec.get_or("samples", 200.0) as usize;
    let sigma = spec.get_or("sigma", 0.5);
    if !(lo >= 16.0 && hi >= lo) {
        return Err(Error::DomainError("lindelof_scan needs 16 <= t_lo <= t_hi".into()));
    }
    let ts: Vec<f64> = if n <= 1 {
        vec![lo]
    } else {
        (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
    };
    let vals = ts
        .par_iter()
        .map(|&t| {
            let z = zeta(EvalPoint::new(sigma, t)?, cfg)?;
            Ok(z.value.norm().ln() * t.ln().ln() / t.ln())
        })
        .collect::<Result<Vec<f64>>>()?;
    let (i, lambda) = vals
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let mut r = report(
        CheckId::LindelofScan,
        &[("t_lo", lo), ("t_hi", hi), ("samples", n as f64), ("sigma", sigma)],
        lambda.max(0.0),
        1.0,
        f64::INFINITY,
        format!("empirical lambda {lambda:.6} at t = {} (informational, no pass/fail)", ts[i]),
    );
    r.pass = true;
    Ok(r)
}

/// Σ_{n≠x, n≤N} |D_y(n)| / (n^c |log(x/n)|) plus a tail bound.
pub fn series_bound_sum(x: f64, y: f64, c: f64, cutoff: usize) -> Result<(f64, f64)> {
    let lam = lambda_sieve(cutoff)?;
    let d = coeff_dy(y, cutoff, &lam)?;
    let mut acc = CompensatedSum::new();
    for n in 2..=cutoff {
        if n as f64 == x {
            continue;
        }
        let v = d.entries[n].norm();
        if v != 0.0 {
            let nf = n as f64;
            acc.add(v / (nf.powf(c) * (x / nf).ln().abs()));
        }
    }
    let tail = if (cutoff as f64) > x {
        log_tail_bound(c, cutoff) / ((cutoff as f64 + 1.0) / x).ln()
    } else {
        f64::INFINITY
    };
    Ok((acc.value(), tail))
}

fn series_bound(spec: &DiagnosticSpec, slack: f64) -> Result<DiagnosticReport> {
    let x = spec.get("x")?;
    let y = spec.get("y")?;
    let c = spec.get_or("c", 1.0 + 1.0 / x.ln());
    let cutoff = spec.get_or("cutoff", 1e6) as usize;
    if !(x >= 10.0) || (cutoff as f64) < 10.0 * x || c <= 1.0 {
        return Err(Error::DomainError("series_bound needs x >= 10, c > 1, cutoff >= 10x".into()));
    }
    let (sum, tail) = series_bound_sum(x, y, c, cutoff)?;
    Ok(report(
        CheckId::SeriesBound,
        &[("x", x), ("y", y), ("c", c), ("cutoff", cutoff as f64)],
        sum + tail,
        x.ln().powi(2),
        slack,
        format!("partial sum {sum:.9}, tail bound {tail:.3e}"),
    ))
}

/// Σ_{n≥2} log n / (n^c (|t - 2πnx| + t^{1/2})): terms up to the cutoff and
/// a bound for the rest.
pub fn technical_sum(x: f64, t: f64, c: f64, cutoff: usize) -> (f64, f64) {
    let mut acc = CompensatedSum::new();
    let rt = t.sqrt();
    for n in 2..=cutoff {
        let nf = n as f64;
        acc.add(nf.ln() / (nf.powf(c) * ((t - 2.0 * PI * nf * x).abs() + rt)));
    }
    // For 2πnx ≥ 2t the denominator exceeds πnx n^c.
    let tail = log_tail_bound(c + 1.0, cutoff) / (PI * x);
    (acc.value(), tail)
}

fn technical_bound(spec: &DiagnosticSpec, slack: f64) -> Result<DiagnosticReport> {
    let x = spec.get("x")?;
    let t = spec.get("t")?;
    if !(x >= 10.0 && t >= 10.0 * x) {
        return Err(Error::DomainError("technical_bound needs t >= 10x >= 100".into()));
    }
    let c = 1.0 + 1.0 / x.ln();
    let min_cut = (t / (PI * x)).ceil() as usize + 1;
    let cutoff = (spec.get_or("cutoff", 1e6) as usize).max(min_cut);
    let (sum, tail) = technical_sum(x, t, c, cutoff);
    let rhs = (x + t.sqrt() * t.ln()) * t.ln() / t.powf(c + 0.5);
    Ok(report(
        CheckId::TechnicalBound,
        &[("x", x), ("t", t), ("c", c), ("cutoff", cutoff as f64)],
        sum + tail,
        rhs,
        slack,
        format!("partial sum {sum:.6e}, tail bound {tail:.3e}"),
    ))
}

/// Δ'{|y|^{-1} + (κ/t)^{1/2} log²(t/κ + |y|) + log κ} + t/κ + (tκ)^{1/2} log² t.
pub fn summation_envelope(y: f64, t: f64, t_prime: f64, kappa: f64) -> f64 {
    let dp = t - t_prime;
    dp * (1.0 / y.abs() + (kappa / t).sqrt() * (t / kappa + y.abs()).ln().powi(2) + kappa.ln())
        + t / kappa
        + (t * kappa).sqrt() * t.ln().powi(2)
}

fn summation_bound(spec: &DiagnosticSpec, slack: f64) -> Result<DiagnosticReport> {
    let y = spec.get("y")?;
    let t = spec.get("t")?;
    let tp = spec.get("t_prime")?;
    let kappa = spec.get("kappa")?;
    let e = std::f64::consts::E;
    if y == 0.0 || !(t > tp && tp >= 10.0) || !(kappa >= e && kappa <= t / e) {
        return Err(Error::DomainError(
            "summation_bound needs y != 0, t > t' >= 10, e <= kappa <= t/e".into(),
        ));
    }
    let n_hi = t.floor() as usize;
    let lam = lambda_sieve(n_hi)?;
    let d = coeff_dy(y, n_hi, &lam)?;
    let mut acc = CompensatedComplex::new();
    for n in (tp.floor() as usize + 1)..=n_hi {
        acc.add(d.entries[n] * expi_product(y, (n as f64).ln()));
    }
    let s = acc.value();
    Ok(report(
        CheckId::SummationBound,
        &[("y", y), ("t", t), ("t_prime", tp), ("kappa", kappa)],
        s.norm(),
        summation_envelope(y, t, tp, kappa),
        slack,
        format!("sum {s}"),
    ))
}

/// Zero table and slack shared by the checks.
#[derive(Debug, Clone, Default)]
pub struct LabContext {
    pub zeros: Option<ZeroTable>,
    pub slack: Option<f64>,
}

impl LabContext {
    fn slack(&self) -> f64 {
        self.slack.unwrap_or(DEFAULT_SLACK)
    }
}

/// Runs the check named by `spec.check_id`.
pub fn bound_ratio_scan(spec: &DiagnosticSpec, ctx: &LabContext, cfg: &EvalConfig) -> Result<DiagnosticReport> {
    let slack = ctx.slack();
    match spec.check_id {
        CheckId::SpIntegral => sp_integral_check(
            spec.get("a")?,
            spec.get("b")?,
            spec.get("sigma")?,
            spec.get("u")?,
            spec.get_or("m", 0.0) as u32,
            slack,
        ),
        CheckId::CggIntegral => cgg_integral_check(
            spec.get("c")?,
            spec.get("T1")?,
            spec.get("T2")?,
            spec.get("y")?,
            spec.get("v")?,
            spec.get("j")? as i32,
            slack,
        ),
        CheckId::MvLocal => {
            let sigma = spec.get("sigma")?;
            let t = spec.get("t")?;
            let owned;
            let zeros = match &ctx.zeros {
                Some(z) => z,
                None => {
                    owned = crate::zeros::find_zeros((t - 3.0).max(0.0), t + 3.0, cfg)?;
                    &owned
                }
            };
            mv_local_check(sigma, t, zeros, cfg, slack)
        }
        CheckId::ChiAsym => chi_asym(spec, slack),
        CheckId::LindelofScan => lindelof_scan(spec, cfg),
        CheckId::SeriesBound => series_bound(spec, slack),
        CheckId::TechnicalBound => technical_bound(spec, slack),
        CheckId::SummationBound => summation_bound(spec, slack),
        CheckId::DirichletConsistency => {
            let sigma = spec.get("sigma")?;
            let t = spec.get("t")?;
            let y = spec.get("y")?;
            let n = spec.get("N")? as usize;
            let lam = lambda_sieve(n)?;
            let d = coeff_dy(y, n, &lam)?;
            crate::arith::dirichlet_consistency(EvalPoint::new(sigma, t)?, &d, n, cfg)
        }
    }
}
