//! The residual `u(z) + Re(z²/2)` of a standardized law on `|z| ≤ Δ/3`,
//! where `u = log|f|`, and the empirical constant `sup |residual|·Δ/|z|³`.
//!
//! A skewed two-point law has a live cubic term. A symmetric one starts at
//! order four, which shows up as a small inner/outer decay ratio. The
//! `exp(cos z − 1)` entry has no zeros at all, yet its residual along the
//! imaginary axis grows like `cosh y`, so no finite constant works there.

use ridgelab::charfn::CharFn;
use ridgelab::dist::LatticeDist;
use ridgelab::theorem1::{residual, theorem1_verify};
use ridgelab::zero_strip::strip_report;
use ridgelab::Complex64;

fn main() -> ridgelab::Result<()> {
    let laws = [
        ("weights (0.7, 0.3)", LatticeDist::from_weights(0, vec![0.7, 0.3])?),
        ("Bernoulli(1/2)", LatticeDist::from_weights(0, vec![0.5, 0.5])?),
        ("binomial(64, 1/2)", LatticeDist::binomial(64, 0.5)?),
        ("binomial(40, 0.2)", LatticeDist::binomial(40, 0.2)?),
    ];
    println!("{:<20} {:>9} {:>11} {:>11} {:>12}", "law", "Δ", "sup_ratio", "decay", "max u_x");
    for (name, dist) in &laws {
        let delta = strip_report(dist)?.big_delta;
        let r = theorem1_verify(&CharFn::standardized(dist)?, delta, 200)?;
        println!(
            "{name:<20} {:>9.4} {:>11.6} {:>11.6} {:>12.3e}",
            r.delta_used, r.sup_ratio, r.cubic_decay_ratio, r.lemma1_margin
        );
    }

    let normal = theorem1_verify(&CharFn::Normal, 10.0, 200)?;
    println!("\nnormal, Δ capped at 10: sup_ratio = {:e}", normal.sup_ratio);

    let cf = CharFn::standardized(&LatticeDist::binomial(64, 0.5)?)?;
    println!("binomial(64, 1/2) residual at z = 0.1: {:.15e}", residual(&cf, Complex64::new(0.1, 0.0))?);

    println!("\nexp(cos z − 1) along the imaginary axis:");
    for y in [1.0, 3.0, 6.0, 10.0] {
        let r = residual(&CharFn::SkellamHalf, Complex64::new(0.0, y))?;
        println!("  residual({y}i) = {r:.6}   cosh y − 1 − y²/2 = {:.6}", f64::cosh(y) - 1.0 - y * y / 2.0);
    }
    Ok(())
}
