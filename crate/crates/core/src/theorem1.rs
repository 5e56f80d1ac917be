//! Residual field `u(z) + Re(z²/2)` on the disc `|z| ≤ Δ/3`, the empirical
//! constant `sup |u(z) + Re(z²/2)|·Δ/|z|³`, and monotonicity of `x ↦ u(x + iy)`
//! on `[0, Δ/2]`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::charfn::{normalization_check, CharFn, LogModulus};
use crate::grid::{linspace, Grid};
use crate::{Error, Result};

pub const DEFAULT_GRID_STEPS: usize = 200;
/// Points with `|z| < EXCLUSION·Δ` are left out of the sup-ratio.
pub const EXCLUSION: f64 = 1e-3;
/// Tolerance of the normalization `u(0) = u_x(0) = u_y(0) = 0`, `u_yy(0) = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-6;

/// `u(z) + Re(z²/2)`.
pub fn residual<F: LogModulus + ?Sized>(cf: &F, z: Complex64) -> Result<f64> {
    let u = cf.eval_log_mod(z)?.u;
    Ok(u + 0.5 * (z.re * z.re - z.im * z.im))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Report {
    #[serde(rename = "Delta_used")]
    pub delta_used: f64,
    /// `sup |residual(z)|·Δ/|z|³` over the disc, `|z| ≥ EXCLUSION·Δ`.
    pub sup_ratio: f64,
    pub sup_point: Complex64,
    pub max_residual: f64,
    /// Sup-ratio on `|z| ≤ Δ/30` over the one on `|z| ≤ Δ/3`.
    pub cubic_decay_ratio: f64,
    pub lemma1_margin: f64,
    pub grid_steps: usize,
    /// `(r, max over angles of the ratio at radius r)` for the outer disc.
    pub radial_profile: Vec<(f64, f64)>,
}

struct DiscScan {
    sup_ratio: f64,
    sup_point: Complex64,
    max_residual: f64,
    profile: Vec<(f64, f64)>,
}

fn scan_disc<F: LogModulus + ?Sized>(cf: &F, big_delta: f64, radius: f64, steps: usize) -> Result<DiscScan> {
    let grid = Grid::disc(Complex64::new(0.0, 0.0), radius, steps)?;
    let cutoff = EXCLUSION * big_delta;
    let values: Vec<(Complex64, f64)> = grid
        .points()
        .into_par_iter()
        .map(|z| residual(cf, z).map(|r| (z, r)))
        .collect::<Result<_>>()?;

    let mut scan = DiscScan {
        sup_ratio: 0.0,
        sup_point: Complex64::new(0.0, 0.0),
        max_residual: 0.0,
        profile: Vec::with_capacity(steps),
    };
    // the polar grid is laid out radius-major
    for ring in values.chunks(steps) {
        let r = ring[0].0.norm();
        let mut ring_max = 0.0f64;
        for &(z, res) in ring {
            scan.max_residual = scan.max_residual.max(res.abs());
            let modulus = z.norm();
            if modulus < cutoff {
                continue;
            }
            let ratio = res.abs() * big_delta / (modulus * modulus * modulus);
            ring_max = ring_max.max(ratio);
            if ratio > scan.sup_ratio {
                scan.sup_ratio = ratio;
                scan.sup_point = z;
            }
        }
        if r >= cutoff {
            scan.profile.push((r, ring_max));
        }
    }
    Ok(scan)
}

/// Measure the residual field of a normalized characteristic function on
/// `|z| ≤ Δ/3` with a `grid_steps × grid_steps` polar grid.
///
/// `Δ` must be finite: entries without zeros need an explicit cap.
pub fn theorem1_verify(cf: &CharFn, big_delta: f64, grid_steps: usize) -> Result<Theorem1Report> {
    if big_delta.is_infinite() {
        return Err(Error::InfiniteDelta);
    }
    if !(big_delta > 0.0) {
        return Err(Error::InvalidParameter(format!("Δ = {big_delta} must be positive")));
    }
    let norm = normalization_check(cf)?;
    if !norm.within(NORMALIZATION_TOL) {
        return Err(Error::NotNormalized(format!("{norm:?}")));
    }
    let outer = scan_disc(cf, big_delta, big_delta / 3.0, grid_steps)?;
    let inner = scan_disc(cf, big_delta, big_delta / 30.0, grid_steps)?;
    let cubic_decay_ratio = if outer.sup_ratio > 0.0 {
        inner.sup_ratio / outer.sup_ratio
    } else {
        0.0
    };
    let lemma1 = lemma1_check(cf, big_delta, &default_lemma1_ys(big_delta), grid_steps)?;
    Ok(Theorem1Report {
        delta_used: big_delta,
        sup_ratio: outer.sup_ratio,
        sup_point: outer.sup_point,
        max_residual: outer.max_residual,
        cubic_decay_ratio,
        lemma1_margin: lemma1.margin,
        grid_steps,
        radial_profile: outer.profile,
    })
}

/// Nine heights spread over `[−Y, Y]`, `Y = min(Δ/2, 4)`.
pub fn default_lemma1_ys(big_delta: f64) -> Vec<f64> {
    let y = (big_delta / 2.0).min(4.0);
    linspace(-y, y, 9)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma1Check {
    /// `max u_x` over `[0, Δ/2] × ys`; nonpositive means monotone decrease.
    pub margin: f64,
    pub argmax: Complex64,
    pub skipped: usize,
    pub checked: usize,
}

/// Largest `u_x(x + iy)` over `x ∈ [0, Δ/2]` (`x_steps` points) and the given
/// heights, from the analytic gradient.
pub fn lemma1_check<F: LogModulus + ?Sized>(
    cf: &F,
    big_delta: f64,
    ys: &[f64],
    x_steps: usize,
) -> Result<Lemma1Check> {
    if !(big_delta > 0.0 && big_delta.is_finite()) {
        return Err(Error::InvalidParameter(format!("Δ = {big_delta} must be positive and finite")));
    }
    if x_steps < 2 {
        return Err(Error::InvalidParameter("x_steps must be at least 2".into()));
    }
    let xs = linspace(0.0, big_delta / 2.0, x_steps);
    let points: Vec<Complex64> = ys
        .iter()
        .flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y)))
        .collect();
    let slopes: Vec<Option<(Complex64, f64)>> = points
        .into_par_iter()
        .map(|z| cf.eval_log_mod(z).ok().map(|p| (z, p.u_x())))
        .collect();
    let mut out = Lemma1Check {
        margin: f64::NEG_INFINITY,
        argmax: Complex64::new(0.0, 0.0),
        skipped: 0,
        checked: 0,
    };
    for s in slopes {
        match s {
            Some((z, ux)) => {
                out.checked += 1;
                if ux > out.margin {
                    out.margin = ux;
                    out.argmax = z;
                }
            }
            None => out.skipped += 1,
        }
    }
    Ok(out)
}
