fn main() {
    let cfg = zgl::eval::EvalConfig::default();
    for (a, b) in [(0.0, 100.0), (0.0, 1000.0), (0.0, 5000.0), (5000.0, 5250.0), (50000.0, 52500.0)] {
        let t0 = std::time::Instant::now();
        let t = zgl::zeros::find_zeros(a, b, &cfg).unwrap();
        let worst = t.zeros.iter().map(|z| z.refinement_residual).fold(0.0, f64::max);
        println!("[{a},{b}] n={} complete={} worst={worst:e} {:?}", t.len(), t.complete, t0.elapsed());
    }
}
