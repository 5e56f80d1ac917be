//! Exact Kolmogorov distance from N(0, 1) for a few lattice laws.
//!
//! The standardized CDF is a step function and Φ is continuous, so the
//! supremum is found by checking both sides of every jump.
//!
//! ```text
//! cargo run --example kolmogorov
//! ```

use ridgelab::dist::{cdf, kolmogorov_distance, moments, LatticeDist};

fn main() -> ridgelab::Result<()> {
    let bernoulli = LatticeDist::from_weights(0, vec![0.5, 0.5])?;
    let r = kolmogorov_distance(&bernoulli)?;
    println!("Bernoulli(1/2): K = {:.6} at t = {:+.3} ({:?})", r.distance, r.argmax_point, r.side);

    let b4 = LatticeDist::binomial(4, 0.5)?;
    let c = cdf(&b4, 2.0);
    println!("binomial(4, 1/2): P(X ≤ 2) = {}, P(X < 2) = {}", c.value, c.left_limit);

    println!("\n{:>6} {:>12} {:>10}", "n", "K", "K·√n");
    for n in [4, 16, 64, 256, 1024] {
        let dist = LatticeDist::binomial(n, 0.5)?;
        let k = kolmogorov_distance(&dist)?.distance;
        println!("{n:>6} {k:>12.8} {:>10.6}", k * (n as f64).sqrt());
    }
    println!("1/√(2π) = {:.6}", 1.0 / (2.0 * std::f64::consts::PI).sqrt());

    // location does not matter
    let shifted = LatticeDist::binomial(64, 0.5)?.shifted(7);
    let s = moments(&shifted)?;
    println!(
        "\nbinomial(64, 1/2) + 7: μ = {}, σ = {}, K = {:.12}",
        s.mu,
        s.sigma,
        kolmogorov_distance(&shifted)?.distance
    );
    Ok(())
}
