//! Critical-line zeros: Gram points, Rosser-block search on Hardy's Z,
//! the Riemann–von Mangoldt count and the plain-text table format.

use crate::error::{Error, Result};
use crate::eval::{hardy_z, theta_derivative, theta_stirling, theta_via_ln_gamma, EvalConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

/// No ordinate lies below this height.
pub const FIRST_ORDINATE_FLOOR: f64 = 14.0;

/// Largest height accepted by [`find_zeros`].
pub const MAX_SEARCH_HEIGHT: f64 = 1.0e7;

/// |Z(γ)| bound for a computed zero to count as refined.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-7;

/// |Z(γ)| bound applied to imported ordinates.
pub const IMPORT_TOLERANCE: f64 = 1e-4;

/// Ordinates closer than this are reported as a possible multiple zero.
pub const CLOSE_PAIR_DISTANCE: f64 = 1e-6;

const ORDINATE_TOLERANCE: f64 = 1e-9;
const MAX_SUBDIVISION: usize = 64;
const RVM_BAND: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroSource {
    Computed,
    Imported,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroOrdinate {
    pub gamma: f64,
    pub index: u64,
    pub refinement_residual: f64,
    pub source: ZeroSource,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub zeros: Vec<ZeroOrdinate>,
    pub t_min: f64,
    pub t_max: f64,
    pub complete: bool,
    /// Adjacent ordinates closer than [`CLOSE_PAIR_DISTANCE`].
    #[serde(default)]
    pub close_pairs: Vec<(f64, f64)>,
}

impl ZeroTable {
    pub fn empty(t_min: f64, t_max: f64) -> Self {
        Self {
            zeros: Vec::new(),
            t_min,
            t_max,
            complete: false,
            close_pairs: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn gammas(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.gamma).collect()
    }

    /// Zeros with lo < γ < hi.
    pub fn open_interval(&self, lo: f64, hi: f64) -> &[ZeroOrdinate] {
        let a = self.zeros.partition_point(|z| z.gamma <= lo);
        let b = self.zeros.partition_point(|z| z.gamma < hi);
        &self.zeros[a..b.max(a)]
    }

    /// Whether the table is complete and its range contains [lo, hi].
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.complete
            && self.t_max >= hi
            && (self.t_min <= lo || self.t_min <= FIRST_ORDINATE_FLOOR)
    }

    pub fn require_complete(self) -> Result<Self> {
        if self.complete {
            Ok(self)
        } else {
            Err(Error::IncompleteSearch {
                t_lo: self.t_min,
                t_hi: self.t_max,
                found: self.zeros.len(),
                expected: expected_count(self.t_min, self.t_max),
            })
        }
    }

    /// The sub-table on [lo, hi]; completeness carries over when covered.
    pub fn restrict(&self, lo: f64, hi: f64) -> Self {
        let zeros: Vec<_> = self
            .zeros
            .iter()
            .copied()
            .filter(|z| z.gamma >= lo && z.gamma <= hi)
            .collect();
        let close_pairs = self
            .close_pairs
            .iter()
            .copied()
            .filter(|&(a, b)| a >= lo && b <= hi)
            .collect();
        Self {
            zeros,
            t_min: lo,
            t_max: hi,
            complete: self.covers(lo, hi),
            close_pairs,
        }
    }

    /// Text form: a metadata comment, then one ordinate per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let first = self.zeros.first().map_or(1, |z| z.index);
        let _ = writeln!(
            s,
            "# zgl t_min={} t_max={} complete={} first_index={}",
            self.t_min, self.t_max, self.complete, first
        );
        for z in &self.zeros {
            let _ = writeln!(s, "{:.12}", z.gamma);
        }
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramPoint {
    pub n: i64,
    pub g: f64,
}

fn theta_any(t: f64) -> f64 {
    if t >= 10.0 {
        theta_stirling(t)
    } else {
        theta_via_ln_gamma(t)
    }
}

/// The Gram point g_n, θ(g_n) = nπ, by Newton's method. θ is increasing
/// and convex beyond 2π, so iterating from a point to the right of the
/// root converges monotonically.
pub fn gram_point(n: i64) -> Result<GramPoint> {
    if n < -1 {
        return Err(Error::DomainError(format!("gram_point needs n >= -1, got {n}")));
    }
    let target = n as f64 * PI;
    // x log x = c with x = t/(2πe) has its root below 1 + c.
    let c = (n as f64 + 0.125) / std::f64::consts::E;
    let mut t = 2.0 * PI * std::f64::consts::E * (1.0 + c.max(0.0));
    for _ in 0..100 {
        let f = theta_any(t) - target;
        let step = f / theta_derivative(t);
        t -= step;
        if step.abs() <= 4.0 * f64::EPSILON * t {
            let res = (theta_any(t) - target).abs();
            if res > 1e-8_f64.max(8.0 * f64::EPSILON * target.abs()) {
                break;
            }
            return Ok(GramPoint { n, g: t });
        }
    }
    Err(Error::NonConvergence(format!("gram point {n}")))
}

/// Index of the last Gram point at or below t (t > g_{-1}).
fn gram_index_below(t: f64) -> i64 {
    let mut n = (theta_any(t) / PI).floor() as i64;
    n = n.max(-1);
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RvmCount {
    pub main: f64,
    pub rounded: i64,
}

/// (T/2π) log(T/2πe) + 7/8.
pub fn count_zeros_rvm(t: f64) -> RvmCount {
    let x = t / (2.0 * PI);
    let main = x * (x.ln() - 1.0) + 0.875;
    RvmCount {
        main,
        rounded: main.round() as i64,
    }
}

fn expected_count(lo: f64, hi: f64) -> f64 {
    let upper = count_zeros_rvm(hi.max(FIRST_ORDINATE_FLOOR)).main;
    let lower = if lo <= FIRST_ORDINATE_FLOOR {
        0.0
    } else {
        count_zeros_rvm(lo).main
    };
    (upper - lower).max(0.0)
}

struct Sample {
    t: f64,
    z: f64,
}

fn z_at(t: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(hardy_z(t, cfg)?.value.re)
}

/// Illinois-modified regula falsi on a sign-change bracket.
fn refine(a: Sample, b: Sample, cfg: &EvalConfig) -> Result<(f64, f64)> {
    let (mut a, mut b) = (a, b);
    let mut side = 0i8;
    let mut prev = f64::NAN;
    let mut best = (0.5 * (a.t + b.t), f64::INFINITY);
    for iter in 0..200 {
        let width = b.t - a.t;
        let mut c = if iter % 8 == 7 {
            0.5 * (a.t + b.t)
        } else {
            b.t - b.z * width / (b.z - a.z)
        };
        if !(c > a.t && c < b.t) {
            c = 0.5 * (a.t + b.t);
        }
        let zc = z_at(c, cfg)?;
        if zc.abs() < best.1 {
            best = (c, zc.abs());
        }
        if zc == 0.0 || width < ORDINATE_TOLERANCE || (c - prev).abs() < 0.05 * ORDINATE_TOLERANCE {
            return Ok((c, zc.abs()));
        }
        prev = c;
        if zc.signum() == b.z.signum() {
            b = Sample { t: c, z: zc };
            if side == 1 {
                a.z *= 0.5;
            }
            side = 1;
        } else {
            a = Sample { t: c, z: zc };
            if side == -1 {
                b.z *= 0.5;
            }
            side = -1;
        }
    }
    Ok(best)
}

struct Block {
    /// Gram indices j < k with both g_j and g_k good.
    j: i64,
    k: i64,
    points: Vec<Sample>,
}

struct BlockResult {
    zeros: Vec<(f64, f64)>,
    satisfied: bool,
}

fn sign_changes(samples: &[Sample]) -> usize {
    samples
        .windows(2)
        .filter(|w| w[0].z.signum() != w[1].z.signum())
        .count()
}

fn search_block(block: &Block, cfg: &EvalConfig) -> Result<BlockResult> {
    let expected = (block.k - block.j) as usize;
    let mut samples: Vec<Sample> = block
        .points
        .iter()
        .map(|s| Sample { t: s.t, z: s.z })
        .collect();
    let mut parts = 1usize;
    while sign_changes(&samples) < expected && parts < MAX_SUBDIVISION {
        parts *= 2;
        let mut next = Vec::with_capacity(samples.len() * 2);
        for w in samples.windows(2) {
            next.push(Sample { t: w[0].t, z: w[0].z });
            let mid = 0.5 * (w[0].t + w[1].t);
            next.push(Sample {
                t: mid,
                z: z_at(mid, cfg)?,
            });
        }
        let last = samples.last().unwrap();
        next.push(Sample { t: last.t, z: last.z });
        samples = next;
    }
    let found = sign_changes(&samples);
    let mut zeros = Vec::with_capacity(found);
    for w in samples.windows(2) {
        if w[0].z.signum() != w[1].z.signum() {
            let a = Sample { t: w[0].t, z: w[0].z };
            let b = Sample { t: w[1].t, z: w[1].z };
            zeros.push(refine(a, b, cfg)?);
        }
    }
    Ok(BlockResult {
        zeros,
        satisfied: found == expected,
    })
}

fn is_good(n: i64, z: f64) -> bool {
    let parity = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    parity * z > 0.0
}

fn gram_sample(n: i64, cfg: &EvalConfig) -> Result<Sample> {
    let g = gram_point(n)?.g;
    Ok(Sample { t: g, z: z_at(g, cfg)? })
}

/// All zeros 1/2 + iγ with t_lo ≤ γ ≤ t_hi.
///
/// The search is widened to good Gram points on both sides and split into
/// Rosser blocks; a block bounded by good points g_j, g_k should contain
/// k - j sign changes of Z. Blocks short of that are subdivided up to
/// 64-fold. `complete` is set when every block holds its expected count
/// and the total agrees with the Riemann–von Mangoldt count to within 3.
pub fn find_zeros(t_lo: f64, t_hi: f64, cfg: &EvalConfig) -> Result<ZeroTable> {
    cfg.validate()?;
    if !(t_lo >= 0.0) || !(t_hi >= t_lo) || t_hi > MAX_SEARCH_HEIGHT {
        return Err(Error::DomainError(format!(
            "find_zeros needs 0 <= t_lo <= t_hi <= {MAX_SEARCH_HEIGHT:e}, got [{t_lo}, {t_hi}]"
        )));
    }
    if t_hi == t_lo || t_hi < FIRST_ORDINATE_FLOOR {
        let mut table = ZeroTable::empty(t_lo, t_hi);
        table.complete = true;
        return Ok(table);
    }

    let mut j = gram_index_below(t_lo.max(10.0));
    let mut left = gram_sample(j, cfg)?;
    while j > -1 && !is_good(j, left.z) {
        j -= 1;
        left = gram_sample(j, cfg)?;
    }

    // Gram points from j up to the first good one at or beyond t_hi.
    let mut k_guess = gram_index_below(t_hi) + 1;
    let mut samples: Vec<Sample> = vec![left];
    let mut indices: Vec<i64> = vec![j];
    let mut next = j + 1;
    loop {
        let batch: Vec<Result<Sample>> = (next..=k_guess)
            .into_par_iter()
            .map(|n| gram_sample(n, cfg))
            .collect();
        for (off, s) in batch.into_iter().enumerate() {
            samples.push(s?);
            indices.push(next + off as i64);
        }
        next = k_guess + 1;
        let (&n_last, last) = (indices.last().unwrap(), samples.last().unwrap());
        if last.t >= t_hi && is_good(n_last, last.z) {
            break;
        }
        k_guess = next;
    }

    let mut blocks = Vec::new();
    let mut start = 0usize;
    for i in 1..samples.len() {
        if is_good(indices[i], samples[i].z) {
            blocks.push(Block {
                j: indices[start],
                k: indices[i],
                points: samples[start..=i]
                    .iter()
                    .map(|s| Sample { t: s.t, z: s.z })
                    .collect(),
            });
            start = i;
        }
    }

    let results: Vec<Result<BlockResult>> =
        blocks.par_iter().map(|b| search_block(b, cfg)).collect();

    let mut satisfied = true;
    let mut all: Vec<(f64, f64)> = Vec::new();
    for r in results {
        let r = r?;
        satisfied &= r.satisfied;
        all.extend(r.zeros);
    }
    // N(g_j) = j + 1 at a good Gram point.
    let base = (j + 1) as u64;
    let mut zeros = Vec::new();
    for (pos, &(gamma, residual)) in all.iter().enumerate() {
        if gamma >= t_lo && gamma <= t_hi {
            zeros.push(ZeroOrdinate {
                gamma,
                index: base + pos as u64 + 1,
                refinement_residual: residual,
                source: ZeroSource::Computed,
            });
        }
    }
    let close_pairs = zeros
        .windows(2)
        .filter(|w| w[1].gamma - w[0].gamma < CLOSE_PAIR_DISTANCE)
        .map(|w| (w[0].gamma, w[1].gamma))
        .collect();
    let count_ok = (zeros.len() as f64 - expected_count(t_lo, t_hi)).abs() <= RVM_BAND;
    Ok(ZeroTable {
        zeros,
        t_min: t_lo,
        t_max: t_hi,
        complete: satisfied && count_ok,
        close_pairs,
    })
}

struct Header {
    t_min: f64,
    t_max: f64,
    complete: bool,
    first_index: u64,
}

fn parse_header(line: &str) -> Option<Header> {
    let rest = line.strip_prefix('#')?.trim().strip_prefix("zgl ")?;
    let mut h = Header {
        t_min: f64::NAN,
        t_max: f64::NAN,
        complete: false,
        first_index: 1,
    };
    for kv in rest.split_whitespace() {
        let (k, v) = kv.split_once('=')?;
        match k {
            "t_min" => h.t_min = v.parse().ok()?,
            "t_max" => h.t_max = v.parse().ok()?,
            "complete" => h.complete = v.parse().ok()?,
            "first_index" => h.first_index = v.parse().ok()?,
            _ => {}
        }
    }
    Some(h)
}

/// Parses the text format: ASCII, LF line endings, '#' comment lines, one
/// strictly ascending decimal ordinate per line.
pub fn parse_zero_text(text: &str) -> Result<(Vec<(usize, f64)>, Option<(f64, f64, bool, u64)>)> {
    let mut out: Vec<(usize, f64)> = Vec::new();
    let mut header = None;
    for (i, line) in text.split('\n').enumerate() {
        let lineno = i + 1;
        if line.contains('\r') {
            return Err(Error::ParseError {
                line: lineno,
                message: "carriage return; line endings must be LF".into(),
            });
        }
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if header.is_none() {
                if let Some(h) = parse_header(trimmed) {
                    header = Some((h.t_min, h.t_max, h.complete, h.first_index));
                }
            }
            continue;
        }
        let v: f64 = trimmed.parse().map_err(|_| Error::ParseError {
            line: lineno,
            message: format!("not a decimal ordinate: {trimmed:?}"),
        })?;
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::ParseError {
                line: lineno,
                message: format!("ordinate must be positive and finite: {trimmed}"),
            });
        }
        if let Some(&(_, last)) = out.last() {
            if v <= last {
                return Err(Error::OrderViolation { line: lineno });
            }
        }
        out.push((lineno, v));
    }
    Ok((out, header))
}

/// Reads a zero table from text, keeps ordinates in [t_min, t_max] and
/// checks |Z(γ)| < 1e-4 for each. Indices follow file position, offset by
/// the `first_index` metadata when present. The table is marked complete
/// only when its metadata declares a verified range containing
/// [t_min, t_max] and the count agrees with the Riemann–von Mangoldt count.
pub fn load_zero_table_from_str(text: &str, t_min: f64, t_max: f64, cfg: &EvalConfig) -> Result<ZeroTable> {
    let (entries, header) = parse_zero_text(text)?;
    let first_index = header.map_or(1, |h| h.3);
    let mut zeros = Vec::new();
    for (pos, &(_, gamma)) in entries.iter().enumerate() {
        if gamma < t_min || gamma > t_max {
            continue;
        }
        zeros.push(ZeroOrdinate {
            gamma,
            index: first_index + pos as u64,
            refinement_residual: 0.0,
            source: ZeroSource::Imported,
        });
    }
    let checked: Vec<Result<f64>> = zeros.par_iter().map(|z| z_at(z.gamma, cfg)).collect();
    let mut bad = Vec::new();
    for (z, r) in zeros.iter_mut().zip(checked) {
        let v = r?.abs();
        z.refinement_residual = v;
        if !(v < IMPORT_TOLERANCE) {
            bad.push(z.gamma);
        }
    }
    if !bad.is_empty() {
        return Err(Error::ValidationFailure { ordinates: bad });
    }
    let declared = header.map_or(false, |(lo, hi, complete, _)| complete && lo <= t_min && hi >= t_max);
    let count_ok = (zeros.len() as f64 - expected_count(t_min, t_max)).abs() <= RVM_BAND;
    let close_pairs = zeros
        .windows(2)
        .filter(|w| w[1].gamma - w[0].gamma < CLOSE_PAIR_DISTANCE)
        .map(|w| (w[0].gamma, w[1].gamma))
        .collect();
    Ok(ZeroTable {
        complete: declared && count_ok && !zeros.is_empty(),
        zeros,
        t_min,
        t_max,
        close_pairs,
    })
}

pub fn load_zero_table(path: &Path, t_min: f64, t_max: f64, cfg: &EvalConfig) -> Result<ZeroTable> {
    let bytes = std::fs::read(path)?;
    let text = String::from_utf8(bytes).map_err(|e| Error::ParseError {
        line: 0,
        message: format!("not ASCII/UTF-8: {e}"),
    })?;
    if !text.is_ascii() {
        let line = text
            .split('\n')
            .position(|l| !l.is_ascii())
            .map_or(0, |i| i + 1);
        return Err(Error::ParseError {
            line,
            message: "non-ASCII content".into(),
        });
    }
    load_zero_table_from_str(&text, t_min, t_max, cfg)
}
