//! A seeded sweep over binomial and Poisson-binomial laws that writes the same
//! CSV tables and SVG plot the command-line tool produces.
//!
//! ```text
//! cargo run --release --example binomial_sweep -- [OUT_DIR]
//! ```

use std::path::PathBuf;

use rayon::prelude::*;
use ridgelab::berry_esseen::{feller_constant, theorem2_chain};
use ridgelab::charfn::CharFn;
use ridgelab::family::Family;
use ridgelab::report::{be_table, line_plot_svg, theorem1_table, Series};
use ridgelab::theorem1::theorem1_verify;
use ridgelab::zero_strip::strip_report;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sweep-out".into()));
    std::fs::create_dir_all(&out)?;

    let mut members = "binomial:n=16,32,64,128,256;p=0.5".parse::<Family>()?.members(None)?;
    members.extend("poisson_binomial:n=64;count=5;seed=11".parse::<Family>()?.members(None)?);

    let rows = members
        .par_iter()
        .map(|m| {
            let delta = strip_report(&m.dist)?.big_delta;
            let thm1 = theorem1_verify(&CharFn::standardized(&m.dist)?, delta, 120)?;
            let chain = theorem2_chain(&m.dist, thm1.sup_ratio.max(1.0), feller_constant())?;
            Ok((m.name.as_str(), m.n, thm1, chain))
        })
        .collect::<ridgelab::Result<Vec<_>>>()?;

    let t1 = theorem1_table(rows.iter().map(|(name, _, r, _)| (*name, r)));
    let be = be_table(rows.iter().map(|(name, n, _, r)| (*name, *n, r)));
    std::fs::write(out.join("theorem1.csv"), t1.to_csv())?;
    std::fs::write(out.join("berry_esseen.csv"), be.to_csv())?;
    print!("{}", be.to_csv());

    let binomial: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.0.starts_with("binomial"))
        .map(|(_, n, _, c)| (*n as f64, c.c1_hat))
        .collect();
    let svg = line_plot_svg(
        "c1_hat = K·σ·δ, binomial(n, 1/2)",
        "n",
        "c1_hat",
        &[Series { name: "binomial".into(), points: binomial }],
    );
    std::fs::write(out.join("c1_hat.svg"), svg)?;
    println!("wrote {}", out.display());
    Ok(())
}
