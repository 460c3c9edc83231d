//! Riemann–Siegel formula for Hardy's Z function.
//!
//! Z(t) = 2 Σ_{n≤N} n^{-1/2} cos(θ(t) - t log n)
//!        + (-1)^{N-1} (t/2π)^{-1/4} Σ_{k=0}^{K} C_k(p) (t/2π)^{-k/2},
//!
//! where N = ⌊√(t/2π)⌋ and p = √(t/2π) - N. The C_k are fixed
//! combinations of derivatives of Ψ(p) = cos 2π(p² - p - 1/16) / cos 2πp.
//! Ψ is entire, so its Taylor coefficients about p = 1/2 are obtained once
//! by the trapezoid rule on a circle (Cauchy's formula) and the C_k are
//! stored as polynomials in q = p - 1/2.

use super::theta::theta_reduced;
use crate::numeric::product_phase;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Lowest height at which the remainder bounds below are valid.
pub(crate) const RS_MIN_HEIGHT: f64 = 200.0;

/// Gabcke's constants: |error after C_0..C_k| ≤ d_k t^{-(2k+3)/4}, t ≥ 200.
const REMAINDER_CONSTANTS: [f64; 5] = [0.127, 0.053, 0.011, 0.031, 0.017];

pub(crate) const MAX_CORRECTION_TERMS: usize = 4;

const PSI_DEGREE: usize = 72;
const POLY_DEGREE: usize = PSI_DEGREE - 12;
const CAUCHY_POINTS: usize = 512;

pub(crate) fn remainder_bound(terms: usize, t: f64) -> f64 {
    let k = terms.min(MAX_CORRECTION_TERMS);
    REMAINDER_CONSTANTS[k] * t.powf(-(2.0 * k as f64 + 3.0) / 4.0)
}

/// Ψ as a function of q = p - 1/2: -cos(2πq² - 5π/8) / cos(2πq).
fn psi_complex(q: Complex64) -> Complex64 {
    let num = (q * q * (2.0 * PI) - 5.0 * PI / 8.0).cos();
    let den = (q * (2.0 * PI)).cos();
    -num / den
}

fn psi_taylor() -> Vec<f64> {
    let mut coeffs = vec![0.0; PSI_DEGREE + 1];
    let samples: Vec<Complex64> = (0..CAUCHY_POINTS)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / CAUCHY_POINTS as f64;
            psi_complex(Complex64::from_polar(1.0, phi))
        })
        .collect();
    for (n, c) in coeffs.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, f) in samples.iter().enumerate() {
            let phi = 2.0 * PI * ((j * n) % CAUCHY_POINTS) as f64 / CAUCHY_POINTS as f64;
            acc += f * Complex64::from_polar(1.0, -phi);
        }
        *c = acc.re / CAUCHY_POINTS as f64;
    }
    coeffs
}

/// Coefficients of Ψ^{(d)} as a polynomial in q.
fn derivative_poly(psi: &[f64], d: usize) -> Vec<f64> {
    (0..=POLY_DEGREE)
        .map(|m| {
            let falling: f64 = ((m + 1)..=(m + d)).map(|j| j as f64).product();
            psi[m + d] * falling
        })
        .collect()
}

fn correction_polys() -> &'static [Vec<f64>; 5] {
    static POLYS: OnceLock<[Vec<f64>; 5]> = OnceLock::new();
    POLYS.get_or_init(|| {
        let psi = psi_taylor();
        let d: Vec<Vec<f64>> = (0..=12).map(|k| derivative_poly(&psi, k)).collect();
        let p2 = PI * PI;
        let p4 = p2 * p2;
        let p6 = p4 * p2;
        let p8 = p4 * p4;
        let combine = |terms: &[(f64, usize)]| -> Vec<f64> {
            (0..=POLY_DEGREE)
                .map(|m| terms.iter().map(|&(w, k)| w * d[k][m]).sum())
                .collect()
        };
        [
            combine(&[(1.0, 0)]),
            combine(&[(-1.0 / (96.0 * p2), 3)]),
            combine(&[(1.0 / (64.0 * p2), 2), (1.0 / (18432.0 * p4), 6)]),
            combine(&[
                (-1.0 / (64.0 * p2), 1),
                (-1.0 / (3840.0 * p4), 5),
                (-1.0 / (5_308_416.0 * p6), 9),
            ]),
            combine(&[
                (1.0 / (128.0 * p2), 0),
                (19.0 / (24576.0 * p4), 4),
                (11.0 / (5_898_240.0 * p6), 8),
                (1.0 / (2_038_431_744.0 * p8), 12),
            ]),
        ]
    })
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// C_k(p) for k = 0..=4.
pub(crate) fn correction_coefficient(k: usize, p: f64) -> f64 {
    horner(&correction_polys()[k], p - 0.5)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct RsOutput {
    pub z: f64,
    pub truncation: f64,
    pub rounding: f64,
}

/// Z(t) for t ≥ [`RS_MIN_HEIGHT`], keeping C_0..C_terms.
pub(crate) fn hardy_z_rs(t: f64, terms: usize) -> RsOutput {
    let terms = terms.min(MAX_CORRECTION_TERMS);
    let tau = (t / (2.0 * PI)).sqrt();
    let n_main = tau.floor() as usize;
    let p = tau - n_main as f64;
    let theta = theta_reduced(t);

    let mut sum = 0.0;
    let mut harmonic = 0.0;
    for n in (1..=n_main).rev() {
        let ln_n = (n as f64).ln();
        let phase = theta - product_phase(t, ln_n);
        let w = 1.0 / (n as f64).sqrt();
        sum += w * phase.cos();
        harmonic += 1.0 / n as f64;
    }

    let w = 1.0 / tau;
    let mut rem = 0.0;
    let mut wk = 1.0;
    for k in 0..=terms {
        rem += correction_coefficient(k, p) * wk;
        wk *= w;
    }
    let sign = if n_main % 2 == 1 { 1.0 } else { -1.0 };
    let rem = sign * rem * w.sqrt();

    let phase_scale = t * (n_main.max(1) as f64).ln() + t * (t / (2.0 * PI)).ln();
    let rounding = f64::EPSILON * (phase_scale * 2.0 * harmonic.sqrt() + 4.0 * tau + 1.0);
    RsOutput {
        z: 2.0 * sum + rem,
        truncation: remainder_bound(terms, t),
        rounding,
    }
}
