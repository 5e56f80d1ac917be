//! Zero-free strip, then Δ, then `T = Δ/(4c₀)`, then the smoothing bound,
//! compared against the exact Kolmogorov distance.

use ridgelab::berry_esseen::{be_bound, feller_constant, theorem2_chain};
use ridgelab::charfn::CharFn;
use ridgelab::dist::{kolmogorov_distance, LatticeDist};

fn main() -> ridgelab::Result<()> {
    let cbe = feller_constant();
    println!("smoothing constant c = 24/(π√(2π)) = {cbe:.10}\n");

    for (name, dist) in [
        ("binomial(256, 1/2)", LatticeDist::binomial(256, 0.5)?),
        ("binomial(100, 0.3)", LatticeDist::binomial(100, 0.3)?),
    ] {
        let r = theorem2_chain(&dist, 1.0, cbe)?;
        println!("{name}");
        println!("  δ = {:.6}, σ = {:.6}, Δ = {:.6}", r.delta, r.sigma, r.big_delta);
        println!("  T = {:.6}, a = {:.6}", r.t, r.a);
        println!(
            "  ∫ = {:.6e} (core {:.6e} + tail {:.6e})",
            r.integral_total, r.integral_core, r.integral_tail
        );
        println!("  K = {:.8} ≤ bound {:.8}: {}", r.k, r.rhs_bound, r.satisfied);
        println!("  c1_hat = K·σ·δ = {:.6}\n", r.c1_hat);
    }

    let dist = LatticeDist::from_weights(0, vec![0.5, 0.5])?;
    let cf = CharFn::standardized(&dist)?;
    let k = kolmogorov_distance(&dist)?.distance;
    println!("Bernoulli(1/2), K = {k:.6}");
    for t in [1.0, 2.0, 5.0, 10.0] {
        let b = be_bound(&cf, t, cbe)?;
        println!(
            "  T = {t:>4}: ∫/π = {:.6}, c/T = {:.6}, bound = {:.6}",
            b.integral / std::f64::consts::PI,
            cbe / t,
            b.rhs
        );
    }
    Ok(())
}
