//! Primality, segmented sieving, witness primes p with |p^{-iy} - 1| > 1/√2,
//! and the prime range T ℒ^{-Θ} < x < e^{π/|y|} T ℒ^{-Θ}.

use crate::error::{Error, Result};
use crate::numeric::product_phase;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Bases that make Miller–Rabin deterministic below 2^64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const SEGMENT: u64 = 1 << 18;

/// Longest interval [`primes_between`] will sieve.
pub const MAX_SIEVE_SPAN: u64 = 2_000_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for p in 2..=limit {
        if !composite[p] {
            out.push(p as u64);
            let mut m = p * p;
            while m <= limit {
                composite[m] = true;
                m += p;
            }
        }
    }
    out
}

fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    // Primes in [lo, hi).
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p >= hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    (0..len)
        .filter(|&i| !composite[i] && lo + i as u64 >= 2)
        .map(|i| lo + i as u64)
        .collect()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Primes p with lo ≤ p < hi, by a segmented sieve. Segments are sieved
/// concurrently and concatenated in order.
pub fn primes_between(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if hi <= lo {
        return Ok(Vec::new());
    }
    if hi - lo > MAX_SIEVE_SPAN {
        return Err(Error::LimitExceeded(format!(
            "sieve span {} exceeds {MAX_SIEVE_SPAN}",
            hi - lo
        )));
    }
    let base = small_primes(isqrt(hi) + 1);
    let starts: Vec<u64> = (lo..hi).step_by(SEGMENT as usize).collect();
    let parts: Vec<Vec<u64>> = starts
        .par_iter()
        .map(|&s| sieve_segment(s, (s + SEGMENT).min(hi), &base))
        .collect();
    Ok(parts.concat())
}

/// Integers strictly inside (lo, hi) as a half-open integer range.
fn open_integer_range(lo: f64, hi: f64) -> (u64, u64) {
    let a = lo.floor() as u64 + 1;
    let b = if hi.fract() == 0.0 { hi as u64 } else { hi.ceil() as u64 };
    (a, b.max(a))
}

/// |p^{-iy} - 1| = 2 |sin(y log p / 2)|.
pub fn deviation(p: u64, y: f64) -> f64 {
    2.0 * product_phase(0.5 * y, (p as f64).ln()).sin().abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessPrime {
    pub p: u64,
    pub y: f64,
    pub deviation: f64,
    pub window_lo: f64,
    pub window_hi: f64,
}

fn window(y: f64, t: f64) -> Result<(f64, f64)> {
    if y == 0.0 || !y.is_finite() {
        return Err(Error::DomainError("witness search needs y != 0".into()));
    }
    let hi = (PI / y.abs()).exp() * t;
    if !(t > 0.0) || !(hi - t >= 2.0) || !hi.is_finite() {
        return Err(Error::DomainError(format!(
            "window ({t}, {hi}) must have width at least 2"
        )));
    }
    Ok((t, hi))
}

/// Smallest prime p in (t, e^{π/|y|} t) with |p^{-iy} - 1| > 1/√2.
pub fn find_witness_prime(y: f64, t: f64) -> Result<WitnessPrime> {
    let (lo, hi) = window(y, t)?;
    let (a, b) = open_integer_range(lo, hi);
    let mut max_dev: f64 = 0.0;
    let mut start = a;
    while start < b {
        let end = (start + SEGMENT).min(b);
        for p in primes_between(start, end)? {
            let d = deviation(p, y);
            if d > FRAC_1_SQRT_2 {
                return Ok(WitnessPrime {
                    p,
                    y,
                    deviation: d,
                    window_lo: lo,
                    window_hi: hi,
                });
            }
            max_dev = max_dev.max(d);
        }
        start = end;
    }
    Err(Error::NoWitnessFound {
        window_lo: lo,
        window_hi: hi,
        max_deviation: max_dev,
    })
}

/// The two-prime construction: with α = e^{π/(4|y|)}, take the first prime
/// p₁ in (t, αt) and the first prime p₂ in (α³t, α⁴t); their phases y log p
/// differ by more than π/2 and less than π, so one of them lies at angular
/// distance above π/4 from 0 mod 2π.
pub fn witness_by_construction(y: f64, t: f64) -> Result<WitnessPrime> {
    let (lo, hi) = window(y, t)?;
    let alpha = (PI / (4.0 * y.abs())).exp();
    let mut max_dev: f64 = 0.0;
    for (l, h) in [(t, alpha * t), (alpha.powi(3) * t, hi)] {
        let (a, b) = open_integer_range(l, h);
        let first = if b - a < 4096 {
            (a..b).find(|&n| is_prime(n))
        } else {
            let mut found = None;
            let mut s = a;
            while s < b && found.is_none() {
                let e = (s + SEGMENT).min(b);
                found = primes_between(s, e)?.first().copied();
                s = e;
            }
            found
        };
        if let Some(p) = first {
            let d = deviation(p, y);
            if d > FRAC_1_SQRT_2 {
                return Ok(WitnessPrime {
                    p,
                    y,
                    deviation: d,
                    window_lo: lo,
                    window_hi: hi,
                });
            }
            max_dev = max_dev.max(d);
        }
    }
    Err(Error::NoWitnessFound {
        window_lo: lo,
        window_hi: hi,
        max_deviation: max_dev,
    })
}

/// ℒ = exp(log T / log log T).
pub fn script_l(t_bold: f64) -> f64 {
    (t_bold.ln() / t_bold.ln().ln()).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeRange {
    pub lo: f64,
    pub hi: f64,
    pub script_l: f64,
    pub primes: Vec<u64>,
}

/// All primes in (T ℒ^{-Θ}, e^{π/|y|} T ℒ^{-Θ}).
pub fn theorem2_prime_range(t_bold: f64, y: f64, theta: f64) -> Result<PrimeRange> {
    if !(t_bold >= 100.0) {
        return Err(Error::DomainError(format!("T_bold must be at least 100, got {t_bold}")));
    }
    if y == 0.0 || !y.is_finite() || !theta.is_finite() {
        return Err(Error::DomainError("prime range needs finite y != 0 and finite Theta".into()));
    }
    let l = script_l(t_bold);
    let lo = t_bold * l.powf(-theta);
    let hi = (PI / y.abs()).exp() * lo;
    if lo < 2.0 || hi - lo < 2.0 {
        return Err(Error::EmptyRange { lo, hi });
    }
    if !(hi < 1.8e19) {
        return Err(Error::LimitExceeded(format!("prime range upper end {hi:e}")));
    }
    let (a, b) = open_integer_range(lo, hi);
    let primes = primes_between(a, b)?;
    if primes.is_empty() {
        return Err(Error::EmptyRange { lo, hi });
    }
    Ok(PrimeRange {
        lo,
        hi,
        script_l: l,
        primes,
    })
}
