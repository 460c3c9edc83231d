//! The von Mangoldt function, the twisted coefficients
//! D_y(n) = -Σ_{ab=n} Λ(a) b^{-iy}, and Chebyshev-type sums.

use crate::error::{Error, Result};
use crate::eval::{logderiv_zeta, zeta, EvalConfig, EvalPoint};
use crate::lab::{CheckId, DiagnosticReport};
use crate::numeric::{expi_product, CompensatedComplex, CompensatedSum};
use crate::zeros::ZeroTable;
use num_complex::Complex64;
use std::io::Write;

pub const MAX_SIEVE_LIMIT: usize = 100_000_000;

/// Calibrated bound for |ψ(x) - x| / (√x log² x) on [10³, 10⁶].
pub const VON_KOCH_THRESHOLD: f64 = 0.1;

/// Calibrated bound for |Σ_{n≤x} Λ(n) n^{iy} - x^{1+iy}/(1+iy)| / (√x log²(x+|y|))
/// on [10³, 10⁶] for |y| ≤ 10 (observed maximum 0.0144).
pub const TWISTED_PSI_THRESHOLD: f64 = 0.05;

/// Λ(n) for n ≤ limit. Entry n stores p when n = p^k, else 0.
#[derive(Debug, Clone)]
pub struct VonMangoldtTable {
    pub limit: usize,
    base: Vec<u32>,
    prime_powers: Vec<u32>,
}

impl VonMangoldtTable {
    /// p if n = p^k (k ≥ 1), otherwise None.
    pub fn prime_base(&self, n: usize) -> Option<u32> {
        match self.base.get(n) {
            Some(&p) if p != 0 => Some(p),
            _ => None,
        }
    }

    pub fn lambda(&self, n: usize) -> f64 {
        self.prime_base(n).map_or(0.0, |p| (p as f64).ln())
    }

    /// All n ≤ limit with Λ(n) ≠ 0, ascending.
    pub fn prime_powers(&self) -> &[u32] {
        &self.prime_powers
    }

    fn check(&self, x: f64) -> Result<usize> {
        if !(x >= 0.0) || x.floor() > self.limit as f64 {
            return Err(Error::LimitExceeded(format!(
                "x = {x} exceeds sieve limit {}",
                self.limit
            )));
        }
        Ok(x.floor() as usize)
    }
}

/// Sieve of Eratosthenes with prime-power marking.
pub fn lambda_sieve(limit: usize) -> Result<VonMangoldtTable> {
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}"
        )));
    }
    let mut composite = vec![false; limit + 1];
    let mut base = vec![0u32; limit + 1];
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        if let Some(start) = p.checked_mul(p) {
            for m in (start..=limit).step_by(p) {
                composite[m] = true;
            }
        }
        let mut q = p;
        loop {
            base[q] = p as u32;
            match q.checked_mul(p) {
                Some(next) if next <= limit => q = next,
                _ => break,
            }
        }
    }
    let prime_powers = (0..=limit)
        .filter(|&n| base[n] != 0)
        .map(|n| n as u32)
        .collect();
    Ok(VonMangoldtTable {
        limit,
        base,
        prime_powers,
    })
}

#[derive(Debug, Clone)]
pub struct CoeffTable {
    pub y: f64,
    pub limit: usize,
    /// entries[n] = D_y(n); entries[0] is unused.
    pub entries: Vec<Complex64>,
}

impl CoeffTable {
    pub fn get(&self, n: usize) -> Complex64 {
        self.entries[n]
    }

    /// `n,re,im` rows for n = 1..=limit.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "n,re,im")?;
        for n in 1..=self.limit {
            let v = self.entries[n];
            writeln!(out, "{n},{:e},{:e}", v.re, v.im)?;
        }
        Ok(())
    }
}

/// D_y(n) for n ≤ limit by accumulating -Λ(a) b^{-iy} into every multiple
/// n = ab of each prime power a.
pub fn coeff_dy(y: f64, limit: usize, lam: &VonMangoldtTable) -> Result<CoeffTable> {
    if limit > lam.limit {
        return Err(Error::LimitExceeded(format!(
            "coefficient limit {limit} exceeds sieve limit {}",
            lam.limit
        )));
    }
    let half = limit / 2;
    let twist: Vec<Complex64> = (0..=half.max(1))
        .map(|b| {
            if b == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                expi_product(-y, (b as f64).ln())
            }
        })
        .collect();
    let mut entries = vec![Complex64::new(0.0, 0.0); limit + 1];
    for &a in lam.prime_powers() {
        let a = a as usize;
        if a > limit {
            break;
        }
        let l = lam.lambda(a);
        entries[a] -= l;
        for b in 2..=limit / a {
            entries[a * b] -= twist[b] * l;
        }
    }
    Ok(CoeffTable { y, limit, entries })
}

/// ψ(x) = Σ_{n≤x} Λ(n).
pub fn chebyshev_psi(x: f64, lam: &VonMangoldtTable) -> Result<f64> {
    let n = lam.check(x)?;
    let mut acc = CompensatedSum::new();
    for &m in lam.prime_powers() {
        if m as usize > n {
            break;
        }
        acc.add(lam.lambda(m as usize));
    }
    Ok(acc.value())
}

/// Σ_{n≤x} Λ(n) n^{iy}.
pub fn twisted_psi(x: f64, y: f64, lam: &VonMangoldtTable) -> Result<Complex64> {
    let n = lam.check(x)?;
    let mut acc = CompensatedComplex::new();
    for &m in lam.prime_powers() {
        if m as usize > n {
            break;
        }
        let ln_m = (m as f64).ln();
        acc.add(expi_product(y, ln_m) * lam.lambda(m as usize));
    }
    Ok(acc.value())
}

/// |ψ(x) - x| / (√x log² x).
pub fn von_koch_ratio(x: f64, lam: &VonMangoldtTable) -> Result<f64> {
    let psi = chebyshev_psi(x, lam)?;
    Ok((psi - x).abs() / (x.sqrt() * x.ln().powi(2)))
}

/// |Σ_{n≤x} Λ(n) n^{iy} - x^{1+iy}/(1+iy)| / (√x log²(x+|y|)).
pub fn twisted_psi_ratio(x: f64, y: f64, lam: &VonMangoldtTable) -> Result<f64> {
    let s = twisted_psi(x, y, lam)?;
    let main = expi_product(y, x.ln()) * x / Complex64::new(1.0, y);
    Ok((s - main).norm() / (x.sqrt() * (x + y.abs()).ln().powi(2)))
}

/// Σ_{n>N} (log n) n^{-σ} for σ > 1: the terms below 3 explicitly, then
/// ∫_M^∞ (log u) u^{-σ} du with M = max(N, 3), where the summand decreases.
pub fn log_tail_bound(sigma: f64, n: usize) -> f64 {
    let m = n.max(3);
    let head: f64 = ((n + 1)..=m).map(|k| (k as f64).ln() * (k as f64).powf(-sigma)).sum();
    let mm = m as f64;
    let d = sigma - 1.0;
    head + mm.powf(-d) * (mm.ln() / d + 1.0 / (d * d))
}

/// Compares Σ_{n≤N} D_y(n) n^{-s} with (ζ'/ζ)(s) ζ(s+iy) for σ ≥ 5/4.
///
/// Passes when the difference is within the tail bound Σ_{n>N} (log n) n^{-σ}
/// plus the evaluation error estimates.
pub fn dirichlet_consistency(
    p: EvalPoint,
    coeffs: &CoeffTable,
    n: usize,
    cfg: &EvalConfig,
) -> Result<DiagnosticReport> {
    if !(p.sigma >= 1.25) {
        return Err(Error::DomainError(format!(
            "Dirichlet consistency needs sigma >= 1.25, got {}",
            p.sigma
        )));
    }
    if n > coeffs.limit {
        return Err(Error::LimitExceeded(format!(
            "N = {n} exceeds coefficient table limit {}",
            coeffs.limit
        )));
    }
    let y = coeffs.y;
    let mut acc = CompensatedComplex::new();
    let mut mag = 0.0;
    for k in 2..=n {
        let d = coeffs.entries[k];
        if d == Complex64::new(0.0, 0.0) {
            continue;
        }
        let lnk = (k as f64).ln();
        let w = (-p.sigma * lnk).exp();
        acc.add(d * expi_product(-p.t, lnk) * w);
        mag += d.norm() * w * (1.0 + p.t.abs() * lnk);
    }
    let partial = acc.value();

    let empty = ZeroTable::empty(0.0, 0.0);
    let ld = logderiv_zeta(p, &empty, cfg)?;
    let shifted = zeta(EvalPoint::new(p.sigma, p.t + y)?, cfg)?;
    let rhs = ld.value * shifted.value;
    let eval_err = ld.abs_error_estimate * shifted.value.norm()
        + ld.value.norm() * shifted.abs_error_estimate
        + 4.0 * f64::EPSILON * mag;
    let diff = (partial - rhs).norm();
    let tail = log_tail_bound(p.sigma, n);
    let bound = tail + eval_err;
    let ratio = diff / bound;
    Ok(DiagnosticReport {
        check_id: CheckId::DirichletConsistency,
        params: [
            ("sigma".to_string(), p.sigma),
            ("t".to_string(), p.t),
            ("y".to_string(), y),
            ("N".to_string(), n as f64),
        ]
        .into_iter()
        .collect(),
        observed: diff,
        predicted_bound: bound,
        ratio,
        pass: diff <= bound,
        details: format!(
            "partial sum {partial}, (zeta'/zeta)(s) zeta(s+iy) = {rhs}, tail bound {tail:e}, evaluation error {eval_err:e}"
        ),
    })
}
