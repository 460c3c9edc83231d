//! Complex log-gamma and digamma by upward recurrence followed by the
//! Stirling series.

use num_complex::Complex64;
use std::f64::consts::PI;

/// B_{2k} / (2k)! for k = 1..=30.
pub(crate) const BERNOULLI_OVER_FACTORIAL: [f64; 30] = [
    8.333_333_333_333_333_3e-2,
    -1.388_888_888_888_888_9e-3,
    3.306_878_306_878_306_9e-5,
    -8.267_195_767_195_767_2e-7,
    2.087_675_698_786_809_9e-8,
    -5.284_190_138_687_493_2e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_9e-13,
    8.586_062_056_277_844_6e-15,
    -2.174_868_698_558_061_9e-16,
    5.509_002_828_360_229_5e-18,
    -1.395_446_468_581_252_3e-19,
    3.534_707_039_629_467_5e-21,
    -8.953_517_427_037_546_9e-23,
    2.267_952_452_337_683_1e-24,
    -5.744_790_668_872_202_4e-26,
    1.455_172_475_614_864_9e-27,
    -3.685_994_940_665_310_2e-29,
    9.336_734_257_095_044_7e-31,
    -2.365_022_415_700_629_9e-32,
    5.990_671_762_482_134_3e-34,
    -1.517_454_884_468_290_3e-35,
    3.843_758_125_454_188_2e-37,
    -9.736_353_072_646_691e-39,
    2.466_247_044_200_681e-40,
    -6.247_076_741_820_743_7e-42,
    1.582_403_024_464_491_4e-43,
    -4.008_273_685_948_936e-45,
    1.015_307_585_556_955_6e-46,
    -2.571_804_158_241_871_7e-48,
];

/// B_{2k} / (2k (2k-1)), k = 1..=10.
const STIRLING_LNGAMMA: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// B_{2k} / (2k), k = 1..=10.
const STIRLING_DIGAMMA: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14364.0,
    -174_611.0 / 6600.0,
];

/// Smallest |w| at which the truncated Stirling series is used.
const STIRLING_RADIUS: f64 = 15.0;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

fn needs_shift(w: Complex64) -> bool {
    w.re < 0.5 || w.norm_sqr() < STIRLING_RADIUS * STIRLING_RADIUS
}

/// A branch of log Γ(z). For Re z > 0 this is the principal branch
/// (continuous, real on the positive axis); elsewhere it differs from the
/// principal branch by a multiple of 2πi. Returns a non-finite value at the
/// poles.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while needs_shift(w) {
        shift += w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING_LNGAMMA {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_TWO_PI + series - shift
}

/// ψ(z) = Γ'(z)/Γ(z). Non-finite at the poles.
pub fn digamma_raw(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while needs_shift(w) {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for c in STIRLING_DIGAMMA {
        series += p * c;
        p *= inv2;
    }
    w.ln() - inv * 0.5 - series - shift
}

/// Distance from `z` to the nearest pole of Γ (a nonpositive integer).
pub(crate) fn distance_to_gamma_pole(z: Complex64) -> f64 {
    let k = z.re.round().min(0.0);
    Complex64::new(z.re - k, z.im).norm()
}

/// π cot(π z), stable for large |Im z|.
pub(crate) fn pi_cot_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    // cot w = i (e^{2iw} + 1)/(e^{2iw} - 1); pick the decaying exponential.
    if z.im >= 0.0 {
        let e = (i * 2.0 * PI * z).exp();
        -i * PI * (1.0 + e) / (1.0 - e)
    } else {
        let e = (-i * 2.0 * PI * z).exp();
        i * PI * (1.0 + e) / (1.0 - e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Reference values: mpmath loggamma/digamma at 40 digits.
    #[test]
    fn ln_gamma_reference_values() {
        let cases = [
            (c(1.0, 0.0), c(0.0, 0.0)),
            (c(0.5, 0.0), c(0.572_364_942_924_700_087_07, 0.0)),
            (c(5.0, 1000.0), c(-1538.792_474_506_360_828_9, 5914.813_779_152_711_049_1)),
            (c(0.3, 2.0), c(-2.359_449_355_937_571_021_2, -0.916_907_613_518_669_755_55)),
            (c(0.25, 5000.0), c(-7855.191_993_738_819_982_8, 37585.573_260_082_821_744)),
            (c(1.0, -3.0), c(-3.244_144_299_589_756_191_6, -1.053_350_771_068_613_200_3)),
        ];
        for (z, want) in cases {
            let got = ln_gamma(z);
            let tol = 1e-13 * (1.0 + want.norm());
            assert!((got - want).norm() < tol, "lnΓ({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn ln_gamma_left_half_plane_matches_up_to_branch() {
        // mpmath principal branch: -0.93508562129827747868 - 8.8709628852474591986i
        let got = ln_gamma(c(-2.5, 0.5));
        let want = c(-0.935_085_621_298_277_478_68, -8.870_962_885_247_459_198_6);
        assert!((got.re - want.re).abs() < 1e-13);
        let turns = (got.im - want.im) / (2.0 * PI);
        assert!((turns - turns.round()).abs() < 1e-12);
    }

    #[test]
    fn digamma_reference_values() {
        let cases = [
            (c(1.0, 0.0), c(-0.577_215_664_901_532_860_61, 0.0)),
            (c(0.5, 0.0), c(-1.963_510_026_021_423_479_4, 0.0)),
            (c(5.0, 1000.0), c(6.907_765_362_215_480_018_7, 1.566_296_356_794_542_624_1)),
            (c(0.3, 2.0), c(0.687_523_593_749_103_972_24, 1.672_730_211_056_628_644)),
            (c(-2.5, 0.5), c(1.116_508_021_969_907_301_4, 2.717_582_596_900_591_515_7)),
            (c(0.25, 5000.0), c(8.517_193_190_999_570_759_3, 1.570_846_326_795_021_619_2)),
            (c(1.0, -3.0), c(1.107_980_710_710_150_880_8, -1.404_129_680_587_576_209_7)),
        ];
        for (z, want) in cases {
            let got = digamma_raw(z);
            assert!((got - want).norm() < 1e-12, "ψ({z}) = {got}, want {want}");
        }
    }

    #[test]
    fn bernoulli_table_matches_zeta_relation() {
        // B_{2k}/(2k)! = (-1)^{k+1} 2 ζ(2k) / (2π)^{2k}, ζ(2k) by direct summation.
        for k in 4..=30usize {
            let two_k = (2 * k) as f64;
            let zeta: f64 = (1..200).map(|n| (n as f64).powf(-two_k)).sum();
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let want = sign * 2.0 * zeta / (2.0 * PI).powf(two_k);
            let got = BERNOULLI_OVER_FACTORIAL[k - 1];
            assert!(((got - want) / want).abs() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn bernoulli_table_leading_entries() {
        let exact = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0];
        for (got, want) in BERNOULLI_OVER_FACTORIAL.iter().zip(exact) {
            assert!(((got - want) / want).abs() < 1e-15);
        }
    }

    #[test]
    fn pi_cot_is_finite_far_from_axis() {
        let v = pi_cot_pi(c(0.3, 400.0));
        assert!((v - c(0.0, -PI)).norm() < 1e-12);
        let v = pi_cot_pi(c(0.3, -400.0));
        assert!((v - c(0.0, PI)).norm() < 1e-12);
        let x = 0.3f64;
        assert!((pi_cot_pi(c(x, 0.0)).re - PI / (PI * x).tan()).abs() < 1e-12);
    }
}
