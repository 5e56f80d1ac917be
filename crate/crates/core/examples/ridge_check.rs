//! Every characteristic function is a ridge function:
//! `|f(x + iy)| ≤ |f(iy)|`. This scans a square grid for violations.

use rand::Rng;
use ridgelab::charfn::{check_ridge, normalization_check, CharFn, LogModPoint, LogModulus};
use ridgelab::dist::LatticeDist;
use ridgelab::family::{random_lattice, seeded};
use ridgelab::grid::Grid;
use ridgelab::{Complex64, Result};

/// `exp(+z²/2)` is not a characteristic function and fails the check.
struct Reversed;

impl LogModulus for Reversed {
    fn eval_log_mod(&self, z: Complex64) -> Result<LogModPoint> {
        Ok(LogModPoint {
            z,
            u: 0.5 * (z.re * z.re - z.im * z.im),
            grad: z,
        })
    }
}

fn main() -> Result<()> {
    let grid = Grid::square(5.0, 50)?;
    for cf in [CharFn::Normal, CharFn::SkellamHalf] {
        let r = check_ridge(&cf, &grid, 1e-10);
        println!("{:<14} violations: {:>4}  checked: {}", cf.to_string(), r.violations.len(), r.checked);
    }

    let mut rng = seeded(42);
    let mut worst = 0;
    for _ in 0..50 {
        let len = rng.gen_range(2..=16);
        let cf = CharFn::Lattice(random_lattice(&mut rng, len)?);
        worst = worst.max(check_ridge(&cf, &grid, 1e-10).violations.len());
    }
    println!("50 random lattice laws: most violations in one law = {worst}");

    let r = check_ridge(&Reversed, &grid, 1e-10);
    let v = r.violations[0];
    println!("exp(+z²/2): {} violations, e.g. at {:.2}{:+.2}i", r.violations.len(), v.z.re, v.z.im);

    let n = normalization_check(&CharFn::standardized(&LatticeDist::binomial(16, 0.3)?)?)?;
    println!(
        "\nstandardized binomial(16, 0.3): u(0) = {:.1e}, u_x(0) = {:.1e}, u_y(0) = {:.1e}, u_yy(0) = {:.8}",
        n.u0, n.ux0, n.uy0, n.uyy0
    );
    Ok(())
}
