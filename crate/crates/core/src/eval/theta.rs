//! The Riemann–Siegel phase θ(t) = arg Γ(1/4 + it/2) - (t/2) log π.

use super::gamma::ln_gamma;
use crate::numeric::{reduce_angle, two_prod};
use num_complex::Complex64;
use std::f64::consts::PI;

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// 1/(48t) + 7/(5760t³) + 31/(80640t⁵)
#[inline]
fn stirling_tail(t: f64) -> f64 {
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    inv * (1.0 / 48.0 + inv2 * (7.0 / 5760.0 + inv2 * (31.0 / 80640.0)))
}

/// θ(t) by the Stirling expansion with three Bernoulli corrections; no
/// domain check (accurate to ~1e-10 down to t ≈ 9).
#[inline]
pub(crate) fn theta_stirling(t: f64) -> f64 {
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + stirling_tail(t)
}

/// θ(t) modulo 2π, with the dominant product reduced exactly.
pub(crate) fn theta_reduced(t: f64) -> f64 {
    let half = 0.5 * t;
    let (hi, lo) = two_prod(half, (t / (2.0 * PI)).ln());
    let main = reduce_angle(hi, lo);
    let rest = reduce_angle(-half, -PI / 8.0 + stirling_tail(t));
    reduce_angle(main + rest, 0.0)
}

/// θ'(t) = (1/2) log(t/2π) - 1/(48t²) - …
pub(crate) fn theta_derivative(t: f64) -> f64 {
    let inv2 = 1.0 / (t * t);
    0.5 * (t / (2.0 * PI)).ln() - inv2 * (1.0 / 48.0 + inv2 * (7.0 / 1920.0))
}

/// θ(t) through the complex log-gamma function; valid for every real t
/// (odd in t).
pub(crate) fn theta_via_ln_gamma(t: f64) -> f64 {
    let lg = ln_gamma(Complex64::new(0.25, 0.5 * t.abs()));
    let v = lg.im - 0.5 * t.abs() * LN_PI;
    if t < 0.0 {
        -v
    } else {
        v
    }
}

/// Absolute rounding error of θ(t) as computed here.
pub(crate) fn theta_rounding(t: f64) -> f64 {
    4.0 * f64::EPSILON * (t.abs() * (t.abs() / (2.0 * PI)).ln().abs() + t.abs() + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath siegeltheta.
    #[test]
    fn stirling_reference_values() {
        let cases = [
            (10.0, -3.067_074_396_289_895_291_7),
            (100.0, 87.972_165_231_787_219_625),
            (500.0, 843.790_100_588_189_229_52),
            (1.0e4, 31861.923_830_835_820_873),
        ];
        for (t, want) in cases {
            let got = theta_stirling(t);
            assert!((got - want).abs() < 1e-10 * want.abs().max(1.0), "θ({t}) = {got}");
        }
    }

    #[test]
    fn ln_gamma_route_agrees_with_stirling() {
        for &t in &[10.0, 37.5, 100.0, 2718.0, 1.0e5] {
            let a = theta_via_ln_gamma(t);
            let b = theta_stirling(t);
            assert!((a - b).abs() < 1e-10 + theta_rounding(t), "t = {t}");
        }
        assert!(theta_via_ln_gamma(0.0).abs() < 1e-15);
        assert!((theta_via_ln_gamma(-50.0) + theta_via_ln_gamma(50.0)).abs() < 1e-14);
    }

    #[test]
    fn reduced_phase_is_congruent() {
        for &t in &[100.0, 1234.5, 5.0e4] {
            let full = theta_stirling(t);
            let red = theta_reduced(t);
            assert!(red.abs() <= PI + 1e-12);
            let turns = (full - red) / (2.0 * PI);
            assert!((turns - turns.round()).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let t = 321.0;
        let h = 1e-4;
        let fd = (theta_stirling(t + h) - theta_stirling(t - h)) / (2.0 * h);
        assert!((fd - theta_derivative(t)).abs() < 1e-8);
    }
}
