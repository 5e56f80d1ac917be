//! Zeros of the generating polynomial and the zero-free strip.
//!
//! `f_X(z) = e^{iz·offset} P(e^{iz})`, so every root `w` of `P` puts zeros of
//! `f_X` on the line `Re z = Arg w`. The strip half-width is `δ = min |Arg w|`.

use ridgelab::dist::LatticeDist;
use ridgelab::zero_strip::{pgf_roots, strip_report};

fn main() -> ridgelab::Result<()> {
    let third = 1.0 / 3.0;
    let laws = [
        ("Bernoulli(1/2)", LatticeDist::from_weights(0, vec![0.5, 0.5])?),
        ("uniform{0,1,2}", LatticeDist::from_weights(0, vec![third; 3])?),
        ("weights 0.1/0.2/0.3/0.4", LatticeDist::from_weights(-2, vec![0.1, 0.2, 0.3, 0.4])?),
        ("binomial(64, 1/2), factored", LatticeDist::binomial(64, 0.5)?),
        ("binomial(64, 1/2), raw", LatticeDist::binomial(64, 0.5)?.to_raw()),
    ];
    for (name, dist) in &laws {
        let s = strip_report(dist)?;
        let w = s.nearest_root.expect("nonconstant polynomial");
        println!("{name}");
        println!("  δ = {:.12}  σ = {:.6}  Δ = δσ = {:.6}", s.delta, s.sigma, s.big_delta);
        println!("  nearest root w = {:.6}{:+.6}i, max scaled residual {:.1e}", w.re, w.im, s.roots.max_residual());
    }

    let rs = pgf_roots(&laws[2].1)?;
    println!("\nroots of 0.1 + 0.2w + 0.3w² + 0.4w³:");
    for w in &rs.roots {
        println!("  {:+.10} {:+.10}i   |Arg| = {:.6}", w.re, w.im, w.arg().abs());
    }
    Ok(())
}
