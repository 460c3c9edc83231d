//! Small floating-point utilities shared by the evaluators: error-free
//! products, reduction of large phases modulo 2π, and deterministic
//! summation.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Low-order part of 2π beyond `TAU`.
const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;

/// `a * b` as an unevaluated sum `hi + lo` (exact).
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    (hi, lo)
}

/// Reduces `hi + lo` to the interval [-π, π].
#[inline]
pub fn reduce_angle(hi: f64, lo: f64) -> f64 {
    if hi.abs() <= PI {
        return hi + lo;
    }
    let k = (hi / TAU).round();
    let r = (-k).mul_add(TAU, hi);
    (-k).mul_add(TAU_LO, r) + lo
}

/// The phase `a * b` reduced modulo 2π.
#[inline]
pub fn product_phase(a: f64, b: f64) -> f64 {
    let (hi, lo) = two_prod(a, b);
    reduce_angle(hi, lo)
}

/// e^{i a b} with the product reduced before the trigonometric call.
#[inline]
pub fn expi_product(a: f64, b: f64) -> Complex64 {
    let (s, c) = product_phase(a, b).sin_cos();
    Complex64::new(c, s)
}

#[inline]
pub fn expi(phase: f64) -> Complex64 {
    let (s, c) = reduce_angle(phase, 0.0).sin_cos();
    Complex64::new(c, s)
}

/// Pairwise (cascade) sum in index order. The association pattern depends
/// only on the slice length, so the result is reproducible across thread
/// counts.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().fold(Complex64::new(0.0, 0.0), |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Neumaier-compensated accumulator for real sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated complex accumulator (component-wise Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplex {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_prod_is_exact() {
        let (hi, lo) = two_prod(1.0 + f64::EPSILON, 1.0 - f64::EPSILON);
        assert_eq!(hi, 1.0);
        assert_eq!(lo, -f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn reduction_matches_naive_for_small_arguments() {
        for &x in &[0.1, -2.0, 3.0, 7.0, -7.0, 100.0, 12345.678] {
            let r = reduce_angle(x, 0.0);
            assert!(r.abs() <= PI + 1e-12);
            assert!((r.sin() - x.sin()).abs() < 1e-11);
            assert!((r.cos() - x.cos()).abs() < 1e-11);
        }
    }

    #[test]
    fn large_phase_keeps_precision() {
        // 10^7 * ln 10^4 with the reduced phase checked through the exact
        // relation e^{i a b} e^{-i a b} = 1 and against a split product.
        let a = 1.0e7;
        let b = 10_000f64.ln();
        let whole = product_phase(a, b);
        let split = reduce_angle(product_phase(a / 2.0, b) * 2.0, 0.0);
        assert!((whole - split).abs() < 1e-8);
    }

    #[test]
    fn pairwise_sum_is_association_independent_of_chunking() {
        let v: Vec<Complex64> = (0..1000)
            .map(|k| Complex64::new((k as f64).sin(), (k as f64).cos()))
            .collect();
        let a = pairwise_sum(&v);
        let b = pairwise_sum(&v.clone());
        assert_eq!(a, b);
        let naive: Complex64 = v.iter().sum();
        assert!((a - naive).norm() < 1e-12);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-16).abs() < 1e-30);
    }
}
