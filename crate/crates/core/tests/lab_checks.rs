use num_complex::Complex64;
use std::f64::consts::PI;
use zgl::eval::EvalConfig;
use zgl::lab::{
    bound_ratio_scan, cgg_integral, cgg_integral_check, mv_local_check, sp_integral, sp_integral_check, CheckId,
    DiagnosticSpec, LabContext, DEFAULT_SLACK,
};
use zgl::zeros::find_zeros;

// (a, b, sigma, u, m, re, im) from tests/oracle/lab_integrals.py.
const SP: [(f64, f64, f64, f64, u32, f64, f64); 10] = [
    (100.0, 500.0, 0.5, 300.0, 0, -31.043001123934895, -28.997596367986137),
    (100.0, 500.0, 0.5, 2000.0, 0, -0.25425783537529783, -0.84817725773193801),
    (100.0, 500.0, 1.0, 250.0, 1, -503.06339327181598, -849.70125414523073),
    (200.0, 1000.0, 0.25, 600.0, 0, -12.463189596347343, 14.948349423571806),
    (50.0, 400.0, 2.0, 100.0, 1, 198.71906343533463, -5618.7477631570293),
    (1000.0, 5000.0, 0.5, 3000.0, 1, -466.10982773966709, 718.2901437526811),
    (1000.0, 3000.0, 0.1, 10.0, 0, 0.018622299010168691, 0.0060304556294111281),
    (300.0, 900.0, 3.0, 5000.0, 0, -109109.11910931049, -90791.826110657408),
    (10.0, 100.0, 0.75, 50.0, 1, 35.507032820660425, -47.524906552478891),
    (5000.0, 20000.0, 0.5, 12345.0, 0, -175.71481186909944, -217.35538466255739),
];

// (2πv, j, re, im) with c = 1, T1 = 200, T2 = 350, y = 1.
const CGG: [(f64, i32, f64, f64); 6] = [
    (275.0, -1, 1.8639203496032815, 5.006727929927943),
    (275.0, 0, 0.63357293048315478, 0.8108753470094665),
    (275.0, 1, 4.4142270846060726, 3.0140478681139915),
    (1000.0, -1, -0.021823321681496312, 0.0015306253313368516),
    (1000.0, 0, -0.0035915082501814341, 0.0011395017897155241),
    (1000.0, 1, -0.018245194555023043, 0.012818286111855462),
];

#[test]
fn sp_integrals_match_reference() {
    for &(a, b, s, u, m, re, im) in &SP {
        let want = Complex64::new(re, im);
        let (got, _) = sp_integral(a, b, s, u, m, 1e-9 * want.norm().max(1.0)).unwrap();
        assert!((got - want).norm() <= 1e-8 * want.norm().max(1.0), "{a} {b} {s} {u} {m}: {got} vs {want}");
    }
}

#[test]
fn sp_envelopes_hold() {
    for &(a, b, s, u, m, _, _) in &SP {
        let r = sp_integral_check(a, b, s, u, m, DEFAULT_SLACK).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn cgg_integrals_match_reference() {
    for &(w, j, re, im) in &CGG {
        let want = Complex64::new(re, im);
        let (got, _) = cgg_integral(1.0, 200.0, 350.0, 1.0, w / (2.0 * PI), j, 1e-11).unwrap();
        assert!((got - want).norm() <= 1e-9, "{w} {j}: {got} vs {want}");
        let r = cgg_integral_check(1.0, 200.0, 350.0, 1.0, w / (2.0 * PI), j, DEFAULT_SLACK).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn sp_preconditions() {
    assert!(sp_integral_check(100.0, 1001.0, 0.5, 300.0, 0, 5.0).is_err());
    assert!(sp_integral_check(5.0, 20.0, 0.5, 10.0, 0, 5.0).is_err());
    assert!(sp_integral_check(100.0, 500.0, 11.0, 300.0, 0, 5.0).is_err());
    assert!(cgg_integral_check(1.0, 200.0, 450.0, 1.0, 40.0, 0, 5.0).is_err());
}

#[test]
fn mv_local_examples() {
    let cfg = EvalConfig::default();
    let zeros = find_zeros(0.0, 60.0, &cfg).unwrap();
    let r = mv_local_check(2.0, 50.0, &zeros, &cfg, 2.0).unwrap();
    assert!(r.pass, "{r:?}");
    // Midpoint of the first two ordinates.
    let g = zeros.gammas();
    let t = 0.5 * (g[0] + g[1]);
    let r = mv_local_check(0.5, t, &zeros, &cfg, DEFAULT_SLACK).unwrap();
    assert!(r.ratio.is_finite());
    let e = mv_local_check(0.5, g[2] + 0.01, &zeros, &cfg, DEFAULT_SLACK).unwrap_err();
    assert_eq!(e.name(), "ZeroProximity");
    let short = find_zeros(0.0, 30.0, &cfg).unwrap();
    let e = mv_local_check(2.0, 50.0, &short, &cfg, DEFAULT_SLACK).unwrap_err();
    assert_eq!(e.name(), "MissingZeroCoverage");
}

#[test]
fn example_points() {
    let cfg = EvalConfig::default();
    let ctx = LabContext::default();
    let chi = DiagnosticSpec::new(CheckId::ChiAsym, &[("sigma", 0.5), ("t", 1e4)]);
    let r = bound_ratio_scan(&chi, &ctx, &cfg).unwrap();
    assert!(r.pass, "{r:?}");
    let series = DiagnosticSpec::new(CheckId::SeriesBound, &[("x", 101.0), ("y", 1.0), ("cutoff", 1e6)]);
    let r = bound_ratio_scan(&series, &ctx, &cfg).unwrap();
    assert!(r.pass, "{r:?}");
    let tech = DiagnosticSpec::new(CheckId::TechnicalBound, &[("x", 100.0), ("t", 1e4)]);
    let r = bound_ratio_scan(&tech, &ctx, &cfg).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn reports_round_trip_as_json_lines() {
    let spec = DiagnosticSpec::new(CheckId::TechnicalBound, &[("x", 100.0), ("t", 1e4)]);
    let r = bound_ratio_scan(&spec, &LabContext::default(), &EvalConfig::default()).unwrap();
    let line = serde_json::to_string(&r).unwrap();
    assert!(!line.contains('\n'));
    let back: zgl::lab::DiagnosticReport = serde_json::from_str(&line).unwrap();
    assert_eq!(back, r);
}
