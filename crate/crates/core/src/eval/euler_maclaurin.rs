//! Euler–Maclaurin summation for ζ(s) and ζ'(s).
//!
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{k=1}^{M} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1} + R,
//!
//! with |R| ≤ |s+2M+1|/(σ+2M+1) · |first omitted term| for σ > -(2M+1).
//! N is chosen from that bound so the truncation error meets the target.

use super::gamma::BERNOULLI_OVER_FACTORIAL;
use super::EvalConfig;
use crate::error::{Error, Result};
use crate::numeric::product_phase;
use num_complex::Complex64;

pub(crate) const MAX_BERNOULLI_ORDER: usize = BERNOULLI_OVER_FACTORIAL.len() - 1;

#[derive(Debug, Clone, Copy)]
pub(crate) struct EmOutput {
    pub value: Complex64,
    pub derivative: Complex64,
    pub truncation: f64,
    pub derivative_truncation: f64,
    pub rounding: f64,
    pub derivative_rounding: f64,
}

/// Number of main-sum terms needed for the truncation bound to reach
/// `target` with `order` Bernoulli corrections.
pub(crate) fn terms_needed(s: Complex64, order: usize, target: f64) -> f64 {
    let m = order as f64;
    let tail_exp = s.re + 2.0 * m + 1.0;
    let mut ln_k = (s + 2.0 * m + 1.0).norm().ln() - tail_exp.ln()
        + BERNOULLI_OVER_FACTORIAL[order].abs().ln();
    for j in 0..=(2 * order) {
        ln_k += (s + j as f64).norm().ln();
    }
    ((ln_k - target.ln()) / tail_exp).exp()
}

fn n_pow_minus_s(ln_n: f64, s: Complex64) -> Complex64 {
    let mag = (-s.re * ln_n).exp();
    let (sn, cs) = product_phase(-s.im, ln_n).sin_cos();
    Complex64::new(mag * cs, mag * sn)
}

pub(crate) fn zeta_em(s: Complex64, cfg: &EvalConfig) -> Result<EmOutput> {
    let order = cfg.em_bernoulli_order;
    let m = order as f64;
    if s.re + 2.0 * m + 1.0 <= 0.0 {
        return Err(Error::DomainError(format!(
            "Euler-Maclaurin with order {order} requires sigma > {}",
            -(2.0 * m + 1.0)
        )));
    }
    let needed = terms_needed(s, order, cfg.target_abs_error);
    let cap = (3.0 * s.im.abs()).max(1.0e4);
    if !needed.is_finite() || needed > cap {
        return Err(Error::AccuracyUnreachable {
            target: cfg.target_abs_error,
            reason: format!(
                "Euler-Maclaurin needs {needed:.3e} terms at s = {s}, cap is {cap:.3e}"
            ),
        });
    }
    let n_terms = (needed.ceil() as usize).max(cfg.em_terms).max(2);

    let t_abs = s.im.abs();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut mag_sum = 0.0;
    let mut dmag_sum = 0.0;
    // Smallest terms first.
    for n in (1..n_terms).rev() {
        let ln_n = (n as f64).ln();
        let term = n_pow_minus_s(ln_n, s);
        sum += term;
        dsum -= term * ln_n;
        let mag = (-s.re * ln_n).exp();
        let phase_err = 3.0 + t_abs * ln_n;
        mag_sum += mag * phase_err;
        dmag_sum += mag * phase_err * (1.0 + ln_n);
    }

    let big_n = n_terms as f64;
    let ln_big_n = big_n.ln();
    let n_ms = n_pow_minus_s(ln_big_n, s);
    let sm1 = s - 1.0;
    let tail_pole = n_ms * big_n / sm1;
    let mut value = sum + tail_pole + n_ms * 0.5;
    let mut deriv =
        dsum + tail_pole * (-ln_big_n - sm1.inv()) - n_ms * (0.5 * ln_big_n);

    // Bernoulli corrections: P_k(s) = s(s+1)…(s+2k-2), tracked with P_k'(s).
    let mut poly = s;
    let mut dpoly = Complex64::new(1.0, 0.0);
    let inv_n2 = 1.0 / (big_n * big_n);
    let mut npow = n_ms / big_n;
    for k in 1..=order {
        let coeff = BERNOULLI_OVER_FACTORIAL[k - 1];
        let term = npow * poly * coeff;
        value += term;
        deriv += npow * coeff * (dpoly - poly * ln_big_n);
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        let ab = a * b;
        dpoly = dpoly * ab + poly * (a + b);
        poly *= ab;
        npow *= inv_n2;
    }

    // First omitted term (k = M+1); poly now holds s(s+1)…(s+2M).
    let omitted = (npow * poly * BERNOULLI_OVER_FACTORIAL[order]).norm();
    let truncation = (s + 2.0 * m + 1.0).norm() / (s.re + 2.0 * m + 1.0) * omitted;
    let mut inv_sum = ln_big_n;
    for j in 0..=(2 * order + 1) {
        inv_sum += (s + j as f64).inv().norm();
    }
    let derivative_truncation = truncation * inv_sum;

    let eps = f64::EPSILON;
    let tail_mag = (-s.re * ln_big_n).exp() * (big_n / sm1.norm() + 1.0);
    let rounding = 2.0 * eps * (mag_sum + tail_mag * (3.0 + t_abs * ln_big_n));
    let derivative_rounding =
        2.0 * eps * (dmag_sum + tail_mag * (3.0 + t_abs * ln_big_n) * (1.0 + ln_big_n));

    Ok(EmOutput {
        value,
        derivative: deriv,
        truncation,
        derivative_truncation,
        rounding,
        derivative_rounding,
    })
}
