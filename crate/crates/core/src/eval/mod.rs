//! Evaluation of ζ(s), Hardy's Z, the Riemann–Siegel phase θ, the
//! functional-equation factor 𝒳(s) = 2^s π^{s-1} Γ(1-s) sin(πs/2), the
//! digamma function and ζ'/ζ, each with an error estimate.
//!
//! Method dispatch:
//! * σ < 0: reflection, ζ(s) = 𝒳(s) ζ(1-s);
//! * σ = 1/2 and t above the switch height: Riemann–Siegel, provided its
//!   remainder bound meets the target;
//! * otherwise Euler–Maclaurin with the number of terms chosen from its
//!   remainder bound.

mod euler_maclaurin;
pub mod gamma;
mod riemann_siegel;
mod theta;

use crate::error::{Error, Result};
use crate::numeric::expi;
use crate::zeros::ZeroTable;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub(crate) use riemann_siegel::{remainder_bound as rs_remainder_bound, RS_MIN_HEIGHT};
pub(crate) use theta::{theta_derivative, theta_stirling, theta_via_ln_gamma};

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Largest |t| accepted by [`chi`].
pub const MAX_HEIGHT: f64 = 1.0e8;

/// A point s = σ + it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub sigma: f64,
    pub t: f64,
}

impl EvalPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::DomainError(format!("non-finite point {sigma} + {t}i")));
        }
        Ok(Self { sigma, t })
    }

    /// 1/2 + it.
    pub fn critical(t: f64) -> Self {
        Self { sigma: 0.5, t }
    }

    /// c + it with c = 1 + 1/log x.
    pub fn at_c(x: f64, t: f64) -> Self {
        Self {
            sigma: 1.0 + 1.0 / x.ln(),
            t,
        }
    }

    /// b + it with b = 1/2 - 1/log log T.
    pub fn at_b(t_bold: f64, t: f64) -> Self {
        Self {
            sigma: 0.5 - 1.0 / t_bold.ln().ln(),
            t,
        }
    }

    /// b' + it with b' = 1 - b = 1/2 + 1/log log T.
    pub fn at_b_prime(t_bold: f64, t: f64) -> Self {
        Self {
            sigma: 0.5 + 1.0 / t_bold.ln().ln(),
            t,
        }
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn from_complex(s: Complex64) -> Self {
        Self {
            sigma: s.re,
            t: s.im,
        }
    }

    pub fn is_critical(&self) -> bool {
        self.sigma == 0.5
    }

    fn conj(&self) -> Self {
        Self {
            sigma: self.sigma,
            t: -self.t,
        }
    }
}

/// Evaluation parameters. Immutable once handed to an evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvalConfig {
    /// Minimum number N of Euler–Maclaurin main-sum terms.
    pub em_terms: usize,
    /// Number M of Bernoulli corrections in Euler–Maclaurin.
    pub em_bernoulli_order: usize,
    /// Riemann–Siegel corrections C_1..C_k kept beyond C_0 (0..=4).
    pub rs_correction_terms: usize,
    /// Height above which the critical line uses Riemann–Siegel.
    pub method_switch_height: f64,
    pub target_abs_error: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            em_terms: 10,
            em_bernoulli_order: 20,
            rs_correction_terms: 4,
            method_switch_height: 50.0,
            target_abs_error: 1e-10,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_error > 0.0) {
            return Err(Error::DomainError("target_abs_error must be positive".into()));
        }
        if !(self.method_switch_height >= 10.0) {
            return Err(Error::DomainError("method_switch_height must be at least 10".into()));
        }
        if self.em_terms == 0 || self.em_bernoulli_order == 0 {
            return Err(Error::DomainError("Euler-Maclaurin parameters must be positive".into()));
        }
        if self.em_bernoulli_order > euler_maclaurin::MAX_BERNOULLI_ORDER {
            return Err(Error::DomainError(format!(
                "em_bernoulli_order must be at most {}",
                euler_maclaurin::MAX_BERNOULLI_ORDER
            )));
        }
        if self.rs_correction_terms > riemann_siegel::MAX_CORRECTION_TERMS {
            return Err(Error::DomainError("rs_correction_terms must be in 0..=4".into()));
        }
        Ok(())
    }

    /// Whether ζ(1/2 + it) is evaluated by Riemann–Siegel under this config.
    pub fn uses_riemann_siegel(&self, t: f64) -> bool {
        let t = t.abs();
        t >= self.method_switch_height.max(RS_MIN_HEIGHT)
            && rs_remainder_bound(self.rs_correction_terms, t) <= self.target_abs_error
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    EulerMaclaurin,
    RiemannSiegel,
    Reflection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionValue {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub method_used: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiFactors {
    pub chi_value: Complex64,
    /// Relative error estimate of `chi_value`.
    pub chi_rel_error: f64,
    pub theta_value: f64,
    pub digamma_value: Complex64,
}

fn check_pole(p: &EvalPoint, cfg: &EvalConfig) -> Result<()> {
    let threshold = 10.0 * cfg.target_abs_error;
    if (p.s() - 1.0).norm() < threshold {
        return Err(Error::PoleProximity {
            s_re: p.sigma,
            s_im: p.t,
            threshold,
        });
    }
    Ok(())
}

/// log 𝒳(s) = (s - 1/2) log π + log Γ((1-s)/2) - log Γ(s/2), with a
/// relative error estimate for exp of it.
fn ln_chi(s: Complex64) -> (Complex64, f64) {
    let a = gamma::ln_gamma((1.0 - s) * 0.5);
    let b = gamma::ln_gamma(s * 0.5);
    let v = (s - 0.5) * LN_PI + a - b;
    let rel = 8.0 * f64::EPSILON * (a.norm() + b.norm() + s.norm() * LN_PI + 1.0);
    (v, rel)
}

/// 𝒳(s) and its relative error.
pub(crate) fn chi_value(s: Complex64) -> Result<(Complex64, f64)> {
    if s.im.abs() > MAX_HEIGHT {
        return Err(Error::OverflowGuard { t: s.im });
    }
    let (l, rel) = ln_chi(s);
    if l.re > 700.0 {
        return Err(Error::OverflowGuard { t: s.im });
    }
    if !l.re.is_finite() && l.re > 0.0 {
        return Err(Error::PoleProximity {
            s_re: s.re,
            s_im: s.im,
            threshold: 0.0,
        });
    }
    Ok((l.exp(), rel))
}

/// ζ(s) with an error estimate.
pub fn zeta(p: EvalPoint, cfg: &EvalConfig) -> Result<FunctionValue> {
    cfg.validate()?;
    check_pole(&p, cfg)?;
    if p.t < 0.0 {
        let mut v = zeta_dispatch(p.conj(), cfg, None)?;
        v.value = v.value.conj();
        return Ok(v);
    }
    zeta_dispatch(p, cfg, None)
}

/// ζ(s) with the evaluation method forced (used by cross-checks).
/// Riemann–Siegel is only available on the critical line above its
/// minimum height; reflection is available for every σ.
pub fn zeta_with_method(p: EvalPoint, cfg: &EvalConfig, method: Method) -> Result<FunctionValue> {
    cfg.validate()?;
    check_pole(&p, cfg)?;
    if p.t < 0.0 {
        let mut v = zeta_dispatch(p.conj(), cfg, Some(method))?;
        v.value = v.value.conj();
        return Ok(v);
    }
    zeta_dispatch(p, cfg, Some(method))
}

fn zeta_dispatch(p: EvalPoint, cfg: &EvalConfig, forced: Option<Method>) -> Result<FunctionValue> {
    let method = forced.unwrap_or(if p.sigma < 0.0 {
        Method::Reflection
    } else if p.is_critical() && cfg.uses_riemann_siegel(p.t) {
        Method::RiemannSiegel
    } else {
        Method::EulerMaclaurin
    });
    match method {
        Method::EulerMaclaurin => {
            let out = euler_maclaurin::zeta_em(p.s(), cfg)?;
            Ok(FunctionValue {
                value: out.value,
                abs_error_estimate: out.truncation + out.rounding,
                method_used: Method::EulerMaclaurin,
            })
        }
        Method::Reflection => {
            let s = p.s();
            let (chi, chi_rel) = chi_value(s)?;
            let other = euler_maclaurin::zeta_em(1.0 - s, cfg)?;
            let value = chi * other.value;
            let err = chi.norm() * (other.truncation + other.rounding) + value.norm() * chi_rel;
            Ok(FunctionValue {
                value,
                abs_error_estimate: err,
                method_used: Method::Reflection,
            })
        }
        Method::RiemannSiegel => {
            if !p.is_critical() || p.t < RS_MIN_HEIGHT {
                return Err(Error::DomainError(format!(
                    "Riemann-Siegel needs sigma = 1/2 and t >= {RS_MIN_HEIGHT}"
                )));
            }
            let rs = riemann_siegel::hardy_z_rs(p.t, cfg.rs_correction_terms);
            let rot = expi(-theta::theta_reduced(p.t));
            Ok(FunctionValue {
                value: rot * rs.z,
                abs_error_estimate: rs.truncation
                    + rs.rounding
                    + rs.z.abs() * theta::theta_rounding(p.t),
                method_used: Method::RiemannSiegel,
            })
        }
    }
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real valued.
pub fn hardy_z(t: f64, cfg: &EvalConfig) -> Result<FunctionValue> {
    cfg.validate()?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::DomainError(format!("hardy_z needs t >= 0, got {t}")));
    }
    if cfg.uses_riemann_siegel(t) {
        let rs = riemann_siegel::hardy_z_rs(t, cfg.rs_correction_terms);
        return Ok(FunctionValue {
            value: Complex64::new(rs.z, 0.0),
            abs_error_estimate: rs.truncation + rs.rounding,
            method_used: Method::RiemannSiegel,
        });
    }
    let z = euler_maclaurin::zeta_em(Complex64::new(0.5, t), cfg)?;
    let th = if t >= 10.0 {
        theta_stirling(t)
    } else {
        theta_via_ln_gamma(t)
    };
    let rotated = expi(th) * z.value;
    Ok(FunctionValue {
        value: Complex64::new(rotated.re, 0.0),
        abs_error_estimate: z.truncation
            + z.rounding
            + z.value.norm() * (theta::theta_rounding(t) + 1e-11),
        method_used: Method::EulerMaclaurin,
    })
}

/// The Riemann–Siegel phase θ(t) for t ≥ 10.
pub fn rs_theta(t: f64) -> Result<f64> {
    if !(t >= 10.0) || !t.is_finite() {
        return Err(Error::DomainError(format!("rs_theta needs t >= 10, got {t}")));
    }
    Ok(theta_stirling(t))
}

/// 𝒳(s) together with θ(t) and ψ(s).
pub fn chi(p: EvalPoint) -> Result<ChiFactors> {
    let s = p.s();
    let (chi_value, chi_rel_error) = chi_value(s)?;
    let digamma_value = digamma(p)?;
    Ok(ChiFactors {
        chi_value,
        chi_rel_error,
        theta_value: theta_via_ln_gamma(p.t),
        digamma_value,
    })
}

/// ψ(s) = Γ'(s)/Γ(s).
pub fn digamma(p: EvalPoint) -> Result<Complex64> {
    let s = p.s();
    if gamma::distance_to_gamma_pole(s) < 1e-10 {
        return Err(Error::PoleProximity {
            s_re: p.sigma,
            s_im: p.t,
            threshold: 1e-10,
        });
    }
    if s.re < -0.5 {
        // ψ(s) = ψ(1-s) - π cot(πs) keeps the recurrence short.
        return Ok(gamma::digamma_raw(1.0 - s) - gamma::pi_cot_pi(s));
    }
    Ok(gamma::digamma_raw(s))
}

/// ζ(s) and ζ'(s) by Euler–Maclaurin (σ > -(2M+1)).
pub fn zeta_and_derivative(p: EvalPoint, cfg: &EvalConfig) -> Result<(FunctionValue, FunctionValue)> {
    cfg.validate()?;
    check_pole(&p, cfg)?;
    let conj = p.t < 0.0;
    let q = if conj { p.conj() } else { p };
    let out = euler_maclaurin::zeta_em(q.s(), cfg)?;
    let fix = |z: Complex64| if conj { z.conj() } else { z };
    Ok((
        FunctionValue {
            value: fix(out.value),
            abs_error_estimate: out.truncation + out.rounding,
            method_used: Method::EulerMaclaurin,
        },
        FunctionValue {
            value: fix(out.derivative),
            abs_error_estimate: out.derivative_truncation + out.derivative_rounding,
            method_used: Method::EulerMaclaurin,
        },
    ))
}

/// Rosser–Schoenfeld: ψ(x) < 1.03883 x for x > 0.
const CHEBYSHEV_CONSTANT: f64 = 1.038_83;

/// Largest truncation used by the Dirichlet-series branch of ζ'/ζ.
const DIRICHLET_MAX_TERMS: f64 = (1u64 << 20) as f64;

/// Σ_{n>N} Λ(n) n^{-σ} ≤ 1.03883 σ/(σ-1) N^{1-σ}.
pub fn dirichlet_logderiv_tail(sigma: f64, n: f64) -> f64 {
    CHEBYSHEV_CONSTANT * sigma / (sigma - 1.0) * n.powf(1.0 - sigma)
}

/// ζ'/ζ(s).
///
/// For σ > 5/4 the Dirichlet series -Σ Λ(n) n^{-s} is used whenever its
/// tail bound meets the target within 2^20 terms; otherwise (and for
/// 0 ≤ σ ≤ 5/4) the quotient of the Euler–Maclaurin expansions of ζ' and
/// ζ. For σ < 0 the reflected log-derivative relation
/// ζ'/ζ(s) = -ζ'/ζ(1-s) + log π - ψ(s/2)/2 - ψ((1-s)/2)/2 is applied.
///
/// For σ < 5/4 the table must cover every ordinate within distance 2 of t.
pub fn logderiv_zeta(p: EvalPoint, zeros: &ZeroTable, cfg: &EvalConfig) -> Result<FunctionValue> {
    cfg.validate()?;
    check_pole(&p, cfg)?;
    let s = p.s();
    if p.sigma > 1.25 {
        let needed = (CHEBYSHEV_CONSTANT * p.sigma / (p.sigma - 1.0) / (0.5 * cfg.target_abs_error))
            .powf(1.0 / (p.sigma - 1.0));
        if needed <= DIRICHLET_MAX_TERMS {
            let n = (needed.ceil() as usize).max(2);
            let lam = crate::arith::lambda_sieve(n)?;
            let mut acc = crate::numeric::CompensatedComplex::new();
            for k in 2..=n {
                let l = lam.lambda(k);
                if l != 0.0 {
                    let lnk = (k as f64).ln();
                    let term = crate::numeric::expi_product(-p.t, lnk) * ((-p.sigma * lnk).exp() * l);
                    acc.add(-term);
                }
            }
            return Ok(FunctionValue {
                value: acc.value(),
                abs_error_estimate: dirichlet_logderiv_tail(p.sigma, n as f64)
                    + 4.0 * f64::EPSILON * (1.0 + p.t.abs() * (n as f64).ln()),
                method_used: Method::EulerMaclaurin,
            });
        }
    }
    if p.sigma < 1.25 {
        check_zero_coverage(p, zeros, cfg)?;
    }

    if p.sigma < 0.0 {
        let q = EvalPoint::from_complex(1.0 - s);
        let inner = logderiv_zeta(q, zeros, cfg)?;
        let a = digamma(EvalPoint::from_complex(s * 0.5))?;
        let b = digamma(EvalPoint::from_complex((1.0 - s) * 0.5))?;
        let value = -inner.value + LN_PI - 0.5 * a - 0.5 * b;
        return Ok(FunctionValue {
            value,
            abs_error_estimate: inner.abs_error_estimate + 1e-12 * (1.0 + a.norm() + b.norm()),
            method_used: Method::Reflection,
        });
    }

    let (z, dz) = zeta_and_derivative(p, cfg)?;
    let q = dz.value / z.value;
    let zn = z.value.norm();
    let err = (dz.abs_error_estimate + q.norm() * z.abs_error_estimate) / zn;
    if !err.is_finite() || zn <= z.abs_error_estimate {
        return Err(Error::AccuracyUnreachable {
            target: cfg.target_abs_error,
            reason: format!("|zeta(s)| = {zn:e} is not resolved at s = {s}"),
        });
    }
    Ok(FunctionValue {
        value: q,
        abs_error_estimate: err,
        method_used: Method::EulerMaclaurin,
    })
}

fn check_zero_coverage(p: EvalPoint, zeros: &ZeroTable, cfg: &EvalConfig) -> Result<()> {
    let t = p.t.abs();
    let need_lo = t - 2.0;
    let need_hi = t + 2.0;
    // No ordinate lies below the first zero at 14.13…
    let lo_ok = zeros.t_min <= need_lo.max(crate::zeros::FIRST_ORDINATE_FLOOR);
    let hi_ok = zeros.t_max >= need_hi || need_hi < crate::zeros::FIRST_ORDINATE_FLOOR;
    if !(lo_ok && hi_ok) {
        return Err(Error::MissingZeroCoverage {
            need_lo,
            need_hi,
            have_lo: zeros.t_min,
            have_hi: zeros.t_max,
        });
    }
    let threshold = 10.0 * cfg.target_abs_error;
    for z in zeros.zeros.iter().filter(|z| (z.gamma - t).abs() < 2.0) {
        let d = Complex64::new(p.sigma - 0.5, t - z.gamma).norm();
        if d < threshold {
            return Err(Error::ZeroProximity {
                gamma: z.gamma,
                distance: d,
            });
        }
    }
    Ok(())
}

/// |𝒳(1/2 + it)| deviation from 1 (diagnostic helper).
pub fn chi_modulus_defect(t: f64) -> Result<f64> {
    Ok((chi_value(Complex64::new(0.5, t))?.0.norm() - 1.0).abs())
}
