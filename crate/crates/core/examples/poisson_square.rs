//! Discrete harmonic measure on the square `(0,2)×(−1,1)` and the smallest
//! arc-averaged boundary derivative of its Poisson kernel at the origin.
//!
//! ```text
//! cargo run --release --example poisson_square
//! ```

use ridgelab::poisson_square::{c2_estimate, harmonic_measure, BoundaryArc, Side};

fn main() -> ridgelab::Result<()> {
    let h = 1.0 / 32.0;
    let right = harmonic_measure(&[BoundaryArc::whole_side(Side::Right)], h)?;
    let left = harmonic_measure(&[BoundaryArc::whole_side(Side::Left)], h)?;
    println!(
        "ω((1,0), right side) = {:.10}, ω((1,0), left side) = {:.10}",
        right.at_point(1.0, 0.0),
        left.at_point(1.0, 0.0)
    );
    let all = harmonic_measure(&Side::ALL.map(BoundaryArc::whole_side), h)?;
    println!("ω(·, ∂Q) ranges over [{:.12}, {:.12}]", all.interior().fold(1.0, f64::min), all.interior().fold(0.0, f64::max));

    println!("\n{:>8} {:>6} {:>12} {:>18}", "h", "arcs", "c2_hat", "argmin midpoint");
    for (h, arcs) in [(1.0 / 32.0, 16), (1.0 / 64.0, 16), (1.0 / 128.0, 16)] {
        let est = c2_estimate(h, arcs)?;
        let (x, y) = est.arcs[est.argmin].midpoint;
        println!("{h:>8.5} {arcs:>6} {:>12.8} {:>18}", est.c2_hat, format!("({x:.4}, {y:.4})"));
    }
    Ok(())
}
