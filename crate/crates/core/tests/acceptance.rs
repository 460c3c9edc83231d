//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::Write;
use std::time::{Duration, Instant};
use zgl::arith::{
    coeff_dy, dirichlet_consistency, lambda_sieve, twisted_psi_ratio, von_koch_ratio,
    TWISTED_PSI_THRESHOLD, VON_KOCH_THRESHOLD,
};
use zgl::eval::{chi, hardy_z, zeta_with_method, EvalConfig, EvalPoint, Method};
use zgl::experiment::{main_term, residual_sweep, theorem1_witness, zero_sum, ExperimentSpec};
use zgl::lab::{bound_ratio_scan, cgg_integral_check, sp_integral_check, CheckId, DiagnosticSpec, LabContext};
use zgl::primes::find_witness_prime;
use zgl::zeros::{count_zeros_rvm, find_zeros};

type Outcome = Result<String, String>;

/// The first 29 ordinates (mpmath zetazero).
const ZEROS_TO_100: [f64; 29] = [
    14.1347251417346938,
    21.022039638771555,
    25.0108575801456888,
    30.4248761258595132,
    32.9350615877391897,
    37.5861781588256713,
    40.9187190121474952,
    43.3270732809149995,
    48.0051508811671597,
    49.7738324776723022,
    52.9703214777144606,
    56.4462476970633948,
    59.3470440026023531,
    60.8317785246098098,
    65.1125440480816067,
    67.0798105294941737,
    69.5464017111739793,
    72.0671576744819076,
    75.7046906990839332,
    77.1448400688748054,
    79.3373750202493679,
    82.9103808540860302,
    84.7354929805170501,
    87.4252746131252294,
    88.8091112076344654,
    92.4918992705584843,
    94.651344040519887,
    95.8706342282453098,
    98.8311942181936922,
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: zgl::Error) -> String {
    format!("{}: {e}", e.name())
}

fn within(elapsed: Duration, limit_s: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || {
        format!("{what} took {:.1} s, limit {limit_s} s", elapsed.as_secs_f64())
    })
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| (lo.ln() + (hi / lo).ln() * k as f64 / (n - 1) as f64).exp())
        .collect()
}

fn functional_equation() -> Outcome {
    let start = Instant::now();
    let cfg = EvalConfig::default();
    let sigmas: Vec<f64> = (0..10).map(|i| -2.0 + 5.0 * i as f64 / 9.0).collect();
    let ts = log_grid(10.0, 1e4, 100);
    let mut worst = 0.0f64;
    let mut count = 0;
    for &sigma in &sigmas {
        for &t in &ts {
            let p = EvalPoint::new(sigma, t).map_err(e2s)?;
            let q = EvalPoint::new(1.0 - sigma, -t).map_err(e2s)?;
            let lhs = zeta_with_method(p, &cfg, Method::EulerMaclaurin).map_err(e2s)?;
            let refl = zeta_with_method(q, &cfg, Method::EulerMaclaurin).map_err(e2s)?;
            let c = chi(p).map_err(e2s)?;
            let rhs = c.chi_value * refl.value;
            let bound = lhs.abs_error_estimate
                + c.chi_value.norm() * refl.abs_error_estimate
                + rhs.norm() * c.chi_rel_error;
            let diff = (lhs.value - rhs).norm();
            ensure(diff <= bound, || {
                format!("s = {sigma}+{t}i: |difference| {diff:e} exceeds combined estimate {bound:e}")
            })?;
            worst = worst.max(diff / bound);
            count += 1;
        }
    }
    within(start.elapsed(), 60.0, "grid")?;
    Ok(format!(
        "{count} points, max difference/estimate {worst:.3}, {:.1} s",
        start.elapsed().as_secs_f64()
    ))
}

fn zero_pipeline() -> Outcome {
    let start = Instant::now();
    let cfg = EvalConfig::default();
    let table = find_zeros(0.0, 100.0, &cfg).map_err(e2s)?;
    ensure(table.len() == 29, || format!("found {} zeros in (0, 100]", table.len()))?;
    let mut worst_z = 0.0f64;
    let mut worst_d = 0.0f64;
    for (z, want) in table.zeros.iter().zip(ZEROS_TO_100) {
        let zv = hardy_z(z.gamma, &cfg).map_err(e2s)?.value.re.abs();
        worst_z = worst_z.max(zv);
        worst_d = worst_d.max((z.gamma - want).abs());
    }
    ensure(worst_z < 1e-7, || format!("max |Z(gamma)| = {worst_z:e}"))?;
    ensure(worst_d < 1e-6, || format!("max ordinate error {worst_d:e}"))?;
    let big = find_zeros(0.0, 5000.0, &cfg).map_err(e2s)?;
    let rvm = count_zeros_rvm(5000.0).main;
    ensure(big.complete, || "search to 5000 is incomplete".into())?;
    ensure((big.len() as f64 - rvm).abs() <= 3.0, || {
        format!("{} zeros to 5000 against main term {rvm:.3}", big.len())
    })?;
    within(start.elapsed(), 300.0, "pipeline")?;
    Ok(format!(
        "29 zeros to 100 (max |Z| {worst_z:.1e}, max deviation {worst_d:.1e}); {} zeros to 5000, main term {rvm:.3}, complete; {:.1} s",
        big.len(),
        start.elapsed().as_secs_f64()
    ))
}

/// Λ(n) by trial division.
fn lambda_naive(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (n as f64).ln()
}

fn coefficients() -> Outcome {
    let lam = lambda_sieve(1_000_000).map_err(e2s)?;
    let mut worst = 0.0f64;
    for y in [0.0, 1.0, -2.5] {
        let table = coeff_dy(y, 1_000_000, &lam).map_err(e2s)?;
        for n in 1..=10_000usize {
            let mut want = Complex64::new(0.0, 0.0);
            for a in 1..=n {
                if n % a == 0 {
                    let b = (n / a) as f64;
                    want -= Complex64::from_polar(lambda_naive(a), -y * b.ln());
                }
            }
            let d = (table.get(n) - want).norm();
            worst = worst.max(d);
            ensure(d <= 1e-12, || format!("y = {y}, n = {n}: differs by {d:e}"))?;
        }
        for n in 2..=1_000_000usize {
            let v = table.get(n).norm();
            let ln = (n as f64).ln();
            ensure(v <= ln * (1.0 + 4.0 * f64::EPSILON), || {
                format!("y = {y}, n = {n}: |D| = {v} > log n = {ln}")
            })?;
        }
    }
    Ok(format!(
        "exact to {worst:.1e} for n <= 1e4, |D_y(n)| <= log n for n <= 1e6, y in {{0, 1, -2.5}}"
    ))
}

fn dirichlet() -> Outcome {
    let cfg = EvalConfig::default();
    let n = 1_000_000;
    let lam = lambda_sieve(n).map_err(e2s)?;
    let points = [(1.25, 10.0), (1.5, 30.0), (2.0, 0.0), (3.0, 100.0), (1.3, 1000.0)];
    let mut worst = 0.0f64;
    let mut count = 0;
    for y in [1.0, -2.5, 10.0, 0.3] {
        let table = coeff_dy(y, n, &lam).map_err(e2s)?;
        for &(sigma, t) in &points {
            let r = dirichlet_consistency(EvalPoint::new(sigma, t).map_err(e2s)?, &table, n, &cfg).map_err(e2s)?;
            ensure(r.pass, || format!("s = {sigma}+{t}i, y = {y}: {} > {}", r.observed, r.predicted_bound))?;
            worst = worst.max(r.ratio);
            count += 1;
        }
    }
    Ok(format!("{count} points, max difference/tail bound {worst:.3}"))
}

fn von_koch() -> Outcome {
    let lam = lambda_sieve(1_000_000).map_err(e2s)?;
    let xs = log_grid(1e3, 1e6, 100);
    let mut vk = 0.0f64;
    for &x in &xs {
        let r = von_koch_ratio(x, &lam).map_err(e2s)?;
        vk = vk.max(r);
        ensure(r <= VON_KOCH_THRESHOLD, || format!("x = {x}: ratio {r}"))?;
    }
    let mut tw = Vec::new();
    for y in [1.0, 2.0, 10.0] {
        let mut m = 0.0f64;
        for &x in &xs {
            let r = twisted_psi_ratio(x, y, &lam).map_err(e2s)?;
            m = m.max(r);
            ensure(r <= TWISTED_PSI_THRESHOLD, || format!("y = {y}, x = {x}: ratio {r}"))?;
        }
        tw.push(format!("y={y}: {m:.4}"));
    }
    Ok(format!(
        "von Koch max {vk:.4} <= {VON_KOCH_THRESHOLD}; twisted max {} <= {TWISTED_PSI_THRESHOLD}",
        tw.join(", ")
    ))
}

fn witness_primes() -> Outcome {
    let mut found = Vec::new();
    for y in [0.5, 1.0, 3.0] {
        for t in [1e2, 1e3, 1e4] {
            let w = find_witness_prime(y, t).map_err(e2s)?;
            let p = w.p as f64;
            ensure(w.window_lo < p && p <= w.window_hi, || format!("y = {y}, t = {t}: p = {} outside window", w.p))?;
            let dev = 2.0 * (0.5 * y * p.ln()).sin().abs();
            ensure(dev > std::f64::consts::FRAC_1_SQRT_2, || format!("y = {y}, t = {t}: deviation {dev}"))?;
            found.push(w.p.to_string());
        }
    }
    Ok(format!("primes {}", found.join(" ")))
}

fn zero_sum_exactness() -> Outcome {
    let cfg = EvalConfig::default();
    let zeros = find_zeros(5000.0, 5250.0, &cfg).map_err(e2s)?;
    let run = |a: f64, b: f64| -> Result<Complex64, String> {
        let spec = ExperimentSpec::new(a, b, 1.0, 101, 1.0, 0.5, 1.0).map_err(e2s)?;
        let r = zero_sum(&spec, &zeros, &cfg).map_err(e2s)?;
        ensure(r.notes.iter().all(|n| !n.contains("moved")), || format!("endpoint moved on [{a}, {b}]"))?;
        Ok(r.s)
    };
    let whole = run(5000.0, 5250.0)?;
    let parts = run(5000.0, 5080.0)? + run(5080.0, 5170.0)? + run(5170.0, 5250.0)?;
    let rel = (whole - parts).norm() / whole.norm();
    ensure(rel <= 1e-9, || format!("partition mismatch {rel:e}"))?;
    let zero = main_term(101, 0.0, 5000.0, 5250.0).norm();
    ensure(zero == 0.0, || format!("main term at y = 0 is {zero:e}"))?;
    let mut chord = 0.0f64;
    for (x, y, t1, t2) in [(101u64, 1.0, 5000.0, 5250.0), (907, -2.5, 1e4, 1.05e4), (7, 0.3, 100.0, 190.0)] {
        let m = main_term(x, y, t1, t2).norm();
        let want = (t2 - t1) * (0.5 * (t1 + t2)).ln() / PI * (0.5 * y * (x as f64).ln()).sin().abs();
        let r = (m - want).abs() / want;
        chord = chord.max(r);
        ensure(r <= 1e-12, || format!("chord identity off by {r:e} at x = {x}"))?;
    }
    Ok(format!("partition relative difference {rel:.1e}; chord identity to {chord:.1e}"))
}

fn theorem1() -> Outcome {
    let cfg = EvalConfig::default();
    let mut lines = Vec::new();
    // Ordinates in each window (mpmath zetazero).
    let expected: [(f64, &[f64]); 2] = [
        (100.0, &[101.317851005731391, 103.725538040478339]),
        (1000.0, &W1000),
    ];
    for (t, want) in expected {
        let w = theorem1_witness(t, 1.0, 1.0, 1e-3, &cfg).map_err(e2s)?;
        ensure(w.zeros_in_window.len() == want.len(), || {
            format!("T = {t}: {} zeros in window, oracle has {}", w.zeros_in_window.len(), want.len())
        })?;
        for (g, h) in w.zeros_in_window.iter().zip(want) {
            ensure((g - h).abs() < 1e-6, || format!("T = {t}: ordinate {g} against {h}"))?;
        }
        let g = w.witness_gamma.ok_or_else(|| format!("T = {t}: no witness"))?;
        let mag = w.shifted_values.iter().find(|v| v.0 == g).map(|v| v.1).unwrap_or(0.0);
        ensure(g >= w.window.0 && g <= w.window.1 && mag > 1e-3, || format!("T = {t}: witness {g} magnitude {mag}"))?;
        lines.push(format!("T={t}: gamma={g:.6} |zeta|={mag:.4}"));
    }
    Ok(lines.join("; "))
}

/// Ordinates in [1000, 1000(1+ε)] (mpmath zetazero).
const W1000: [f64; 22] = [
    1001.34948263778274,
    1002.40430548839171,
    1003.26780817945325,
    1004.67504412117289,
    1005.54342030437836,
    1008.00670430706365,
    1008.79570990074228,
    1009.80659074696463,
    1010.56975701106108,
    1012.4100425157616,
    1013.05863809840899,
    1014.6896326223704,
    1016.06017894264738,
    1017.26640236435541,
    1018.60557251862015,
    1019.91243974394404,
    1020.91747501726368,
    1021.54434449990465,
    1022.88527091171635,
    1025.2657241977277,
    1025.70794437146289,
    1027.46769351558777,
];

fn lemma_lab() -> Outcome {
    let cfg = EvalConfig::default();
    let sp = [
        (100.0, 500.0, 0.5, 300.0, 0),
        (100.0, 500.0, 0.5, 2000.0, 0),
        (100.0, 500.0, 1.0, 250.0, 1),
        (200.0, 1000.0, 0.25, 600.0, 0),
        (50.0, 400.0, 2.0, 100.0, 1),
        (1000.0, 5000.0, 0.5, 3000.0, 1),
        (1000.0, 3000.0, 0.1, 10.0, 0),
        (300.0, 900.0, 3.0, 5000.0, 0),
        (10.0, 100.0, 0.75, 50.0, 1),
        (5000.0, 20000.0, 0.5, 12345.0, 0),
    ];
    let mut sp_max = 0.0f64;
    for (a, b, s, u, m) in sp {
        let r = sp_integral_check(a, b, s, u, m, 5.0).map_err(e2s)?;
        ensure(r.pass, || format!("sp a={a} b={b} sigma={s} u={u} m={m}: ratio {}", r.ratio))?;
        sp_max = sp_max.max(r.ratio);
    }
    let mut cgg_max = 0.0f64;
    for w in [275.0, 1000.0] {
        for j in [-1, 0, 1] {
            let r = cgg_integral_check(1.0, 200.0, 350.0, 1.0, w / (2.0 * PI), j, 5.0).map_err(e2s)?;
            ensure(r.pass, || format!("cgg 2pi v={w} j={j}: ratio {}", r.ratio))?;
            cgg_max = cgg_max.max(r.ratio);
        }
    }
    let ctx = LabContext::default();
    let chi = DiagnosticSpec::new(CheckId::ChiAsym, &[("sigma", 0.5), ("t_lo", 1e2), ("t_hi", 1e6), ("samples", 200.0)]);
    let rc = bound_ratio_scan(&chi, &ctx, &cfg).map_err(e2s)?;
    ensure(rc.pass, || format!("chi_asym ratio {}", rc.ratio))?;
    let series = DiagnosticSpec::new(CheckId::SeriesBound, &[("x", 101.0), ("y", 1.0), ("cutoff", 1e6)]);
    let rs = bound_ratio_scan(&series, &ctx, &cfg).map_err(e2s)?;
    ensure(rs.pass, || format!("series_bound ratio {}", rs.ratio))?;
    let tech = DiagnosticSpec::new(CheckId::TechnicalBound, &[("x", 100.0), ("t", 1e4)]);
    let rt = bound_ratio_scan(&tech, &ctx, &cfg).map_err(e2s)?;
    ensure(rt.pass, || format!("technical_bound ratio {}", rt.ratio))?;
    Ok(format!(
        "sp max ratio {sp_max:.3} (10 configs), cgg max ratio {cgg_max:.3} (6 configs), chi_asym {:.3}, series_bound {:.3}, technical_bound {:.3}",
        rc.ratio, rs.ratio, rt.ratio
    ))
}

/// (T, x, zero_count, ratio) from the first recorded sweep.
const SWEEP_BASELINE: [(f64, u64, usize, f64); 3] = [
    (5e3, 97, 267, 0.25807063878427927),
    (1e4, 163, 590, 0.3153650321109782),
    (5e4, 547, 3583, 0.10335360695253616),
];

fn residual_trend() -> Outcome {
    let cfg = EvalConfig::default();
    let entries = residual_sweep(&[5e3, 1e4, 5e4], 1.0, 1.0, 1.0, 0.05, &cfg).map_err(e2s)?;
    let mut out = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let r = e.outcome.as_ref().map_err(|x| format!("T = {}: {}", e.t, x.name()))?;
        ensure(r.ratio.is_finite(), || format!("T = {}: ratio {}", e.t, r.ratio))?;
        if let Some(&(t, x, n, ratio)) = SWEEP_BASELINE.get(i) {
            ensure(t == e.t && x == r.spec.x && n == r.zero_count && ((r.ratio - ratio) / ratio).abs() < 1e-6, || {
                format!("T = {}: x = {}, {} zeros, ratio {} differs from baseline", e.t, r.spec.x, r.zero_count, r.ratio)
            })?;
        }
        out.push(format!("T={} x={} zeros={} ratio={:.6e}", e.t, r.spec.x, r.zero_count, r.ratio));
    }
    Ok(out.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("functional equation", functional_equation),
        ("zero pipeline", zero_pipeline),
        ("D_y exactness", coefficients),
        ("Dirichlet consistency", dirichlet),
        ("von Koch property", von_koch),
        ("witness primes", witness_primes),
        ("zero-sum exactness", zero_sum_exactness),
        ("witness window desk check", theorem1),
        ("lemma-lab envelopes", lemma_lab),
        ("residual trend", residual_trend),
    ];
    let start = Instant::now();
    let stdout = std::io::stdout();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        let mut out = stdout.lock();
        let _ = writeln!(
            out,
            "criterion {:2} {tag} {name}: {detail} [{:.1} s]",
            i + 1,
            t0.elapsed().as_secs_f64()
        );
    }
    let total = start.elapsed().as_secs_f64();
    let _ = writeln!(
        stdout.lock(),
        "acceptance: {} passed, {failed} failed, {total:.1} s",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
