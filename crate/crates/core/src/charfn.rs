//! Characteristic functions evaluated in the log domain.
//!
//! Every variant is an entire function. Evaluation returns `log f(z)` and the
//! logarithmic derivative `f′(z)/f(z)`, from which `u = log|f|` and its
//! gradient follow without ever forming `f` itself, so points far from the
//! real axis do not overflow.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dist::{moments, LatticeDist, Standardization};
use crate::grid::Grid;
use crate::{Error, Result};

/// Relative size of a factored sum below which `log|f|` is refused.
pub const NEAR_ZERO_SCALE: f64 = 1e-280;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Whether the growth condition on `u(±ir)` holds.
///
/// `FiniteStrip` entries obey the estimates on any finite strip; `Critical`
/// entries sit exactly at the borderline rate where they fail for `Δ = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthClass {
    FiniteStrip,
    Critical,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CharFn {
    /// `Σ_k p_k exp(i z (offset + k))`.
    Lattice(LatticeDist),
    /// `exp(−i z μ/σ) · inner(z/σ)`.
    Standardized {
        inner: Box<CharFn>,
        std: Standardization,
    },
    /// `exp(−z²/2)`.
    Normal,
    /// `exp(cos z − 1)`, the difference of two independent Poisson(1/2)
    /// variables.
    SkellamHalf,
}

/// `log f` and `f′/f` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogEval {
    pub log_f: Complex64,
    pub dlog: Complex64,
}

/// `u = log|f(z)|` with its gradient packed as `u_x − i·u_y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogModPoint {
    pub z: Complex64,
    pub u: f64,
    pub grad: Complex64,
}

impl LogModPoint {
    pub fn u_x(&self) -> f64 {
        self.grad.re
    }

    pub fn u_y(&self) -> f64 {
        -self.grad.im
    }
}

/// Anything that can report `log|f|` and its gradient.
pub trait LogModulus: Sync {
    fn eval_log_mod(&self, z: Complex64) -> Result<LogModPoint>;
}

impl CharFn {
    /// Characteristic function of `(X − μ)/σ`.
    pub fn standardized(dist: &LatticeDist) -> Result<Self> {
        let std = moments(dist)?;
        Ok(CharFn::Standardized {
            inner: Box::new(CharFn::Lattice(dist.clone())),
            std,
        })
    }

    /// Closed-form catalog entries by name.
    pub fn catalog(name: &str) -> Option<Self> {
        match name {
            "normal" => Some(CharFn::Normal),
            "skellam_half" => Some(CharFn::SkellamHalf),
            _ => None,
        }
    }

    pub const CATALOG: [&'static str; 2] = ["normal", "skellam_half"];

    pub fn growth_class(&self) -> GrowthClass {
        match self {
            CharFn::SkellamHalf => GrowthClass::Critical,
            CharFn::Standardized { inner, .. } => inner.growth_class(),
            CharFn::Lattice(_) | CharFn::Normal => GrowthClass::FiniteStrip,
        }
    }

    /// True when `Δ = δσ` is infinite (no zeros anywhere).
    pub fn is_zero_free(&self) -> bool {
        match self {
            CharFn::Normal | CharFn::SkellamHalf => true,
            CharFn::Standardized { inner, .. } => inner.is_zero_free(),
            CharFn::Lattice(_) => false,
        }
    }

    pub fn log_eval(&self, z: Complex64) -> Result<LogEval> {
        match self {
            CharFn::Normal => Ok(LogEval {
                log_f: -0.5 * z * z,
                dlog: -z,
            }),
            CharFn::SkellamHalf => Ok(LogEval {
                log_f: z.cos() - 1.0,
                dlog: -z.sin(),
            }),
            CharFn::Lattice(dist) => lattice_log_eval(dist, Affine::IDENTITY, z),
            CharFn::Standardized { inner, std } => match inner.as_ref() {
                CharFn::Lattice(dist) => lattice_log_eval(dist, Affine::standardizing(std), z),
                other => {
                    let scale = 1.0 / std.sigma;
                    let shift = std.mu * scale;
                    let e = other.log_eval(z * scale)?;
                    Ok(LogEval {
                        log_f: -I * z * shift + e.log_f,
                        dlog: -I * shift + e.dlog * scale,
                    })
                }
            },
        }
    }

    /// `f(z)`; overflows only when `u(z)` itself exceeds the f64 range.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.log_eval(z)?.log_f.exp())
    }
}

impl LogModulus for CharFn {
    fn eval_log_mod(&self, z: Complex64) -> Result<LogModPoint> {
        let e = self.log_eval(z)?;
        Ok(LogModPoint {
            z,
            u: e.log_f.re,
            grad: e.dlog,
        })
    }
}

impl fmt::Display for CharFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharFn::Normal => write!(f, "normal"),
            CharFn::SkellamHalf => write!(f, "skellam_half"),
            CharFn::Lattice(d) => write!(f, "lattice[{}..{}]", d.offset(), d.offset() + d.len() as i64 - 1),
            CharFn::Standardized { inner, .. } => write!(f, "standardized({inner})"),
        }
    }
}

/// `f(z) = g(z·scale)·exp(−i z·center·scale)` where `g` is the unscaled
/// lattice function: support point `x` moves to `(x − center)·scale`.
#[derive(Debug, Clone, Copy)]
struct Affine {
    center: f64,
    scale: f64,
}

impl Affine {
    const IDENTITY: Affine = Affine {
        center: 0.0,
        scale: 1.0,
    };

    fn standardizing(std: &Standardization) -> Affine {
        Affine {
            center: std.mu,
            scale: 1.0 / std.sigma,
        }
    }
}

fn lattice_log_eval(dist: &LatticeDist, map: Affine, z: Complex64) -> Result<LogEval> {
    match dist.bernoulli_ps() {
        Some(ps) => product_log_eval(ps, map, z),
        None => sum_log_eval(dist, map, z),
    }
}

/// Direct sum with the largest term modulus factored out.
fn sum_log_eval(dist: &LatticeDist, map: Affine, z: Complex64) -> Result<LogEval> {
    // centering relative to the offset keeps large offsets exact
    let local_center = map.center - dist.offset() as f64;
    let support = |j: usize| (j as f64 - local_center) * map.scale;
    let (x, y) = (z.re, z.im);

    let mut top = f64::NEG_INFINITY;
    for (j, &p) in dist.weights().iter().enumerate() {
        if p > 0.0 {
            top = top.max(p.ln() - y * support(j));
        }
    }
    let mut s = Complex64::new(0.0, 0.0);
    let mut ds = Complex64::new(0.0, 0.0);
    for (j, &p) in dist.weights().iter().enumerate() {
        if p > 0.0 {
            let sj = support(j);
            let mag = (p.ln() - y * sj - top).exp();
            let term = Complex64::from_polar(mag, x * sj);
            s += term;
            ds += term * sj;
        }
    }
    if s.norm() < NEAR_ZERO_SCALE {
        return Err(Error::EvaluationNearZero { re: z.re, im: z.im });
    }
    Ok(LogEval {
        log_f: Complex64::new(top, 0.0) + s.ln(),
        dlog: I * ds / s,
    })
}

/// `Π (1 − p + p·e^{iw})` with `w = z·scale`. Runs of equal `p` are
/// evaluated once.
fn product_log_eval(ps: &[f64], map: Affine, z: Complex64) -> Result<LogEval> {
    let w = z * map.scale;
    let drift = map.center * map.scale;
    let mut log_f = -I * z * drift;
    let mut dlog = -I * drift;
    let mut k = 0;
    while k < ps.len() {
        let p = ps[k];
        let run = ps[k..].iter().take_while(|&&q| q == p).count();
        let (log_factor, dlog_factor) =
            bernoulli_factor_log(p, w).ok_or(Error::EvaluationNearZero { re: z.re, im: z.im })?;
        log_f += run as f64 * log_factor;
        dlog += run as f64 * map.scale * dlog_factor;
        k += run;
    }
    Ok(LogEval { log_f, dlog })
}

/// `log(1 − p + p·e^{iw})` and its `w`-derivative.
///
/// Near the real axis the factor is `1 + v` with `v = p(e^{iw} − 1)` small, and
/// `log1p` keeps the tiny real parts that the residual field depends on.
/// Elsewhere the larger of the two terms is factored out.
fn bernoulli_factor_log(p: f64, w: Complex64) -> Option<(Complex64, Complex64)> {
    if w.im > -1.0 {
        let em1 = expm1_i(w);
        let v = p * em1;
        if v.norm() <= 0.5 {
            let log_factor = Complex64::new(0.5 * (2.0 * v.re + v.norm_sqr()).ln_1p(), v.im.atan2(1.0 + v.re));
            let d = I * p * (em1 + 1.0) / (v + 1.0);
            return Some((log_factor, d));
        }
    }
    let a_fail = (1.0 - p).ln();
    let a_succ = p.ln() - w.im;
    let top = a_fail.max(a_succ);
    let succ = Complex64::from_polar((a_succ - top).exp(), w.re);
    let g = (a_fail - top).exp() + succ;
    if g.norm() < NEAR_ZERO_SCALE {
        return None;
    }
    Some((top + g.ln(), I * succ / g))
}

/// `e^{iw} − 1` without cancellation for small `w`.
fn expm1_i(w: Complex64) -> Complex64 {
    // iw = a + ib with a = −Im w, b = Re w
    let (a, b) = (-w.im, w.re);
    let half = (0.5 * b).sin();
    Complex64::new(a.exp_m1() * b.cos() - 2.0 * half * half, a.exp() * b.sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RidgeViolation {
    pub z: Complex64,
    pub u: f64,
    pub u_axis: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RidgeCheck {
    pub violations: Vec<RidgeViolation>,
    /// Points skipped because `f` was numerically zero there.
    pub skipped: usize,
    pub checked: usize,
}

impl RidgeCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every grid point where `u(x + iy) > u(iy) + tol`.
pub fn check_ridge<F: LogModulus + ?Sized>(cf: &F, grid: &Grid, tol: f64) -> RidgeCheck {
    let outcomes: Vec<Option<Option<RidgeViolation>>> = grid
        .points()
        .into_par_iter()
        .map(|z| {
            let on_axis = cf.eval_log_mod(Complex64::new(0.0, z.im)).ok()?;
            let here = cf.eval_log_mod(z).ok()?;
            Some((here.u > on_axis.u + tol).then_some(RidgeViolation {
                z,
                u: here.u,
                u_axis: on_axis.u,
            }))
        })
        .collect();
    let skipped = outcomes.iter().filter(|o| o.is_none()).count();
    RidgeCheck {
        checked: outcomes.len() - skipped,
        skipped,
        violations: outcomes.into_iter().flatten().flatten().collect(),
    }
}

/// `u(0)`, `u_x(0)`, `u_y(0)` and `u_yy(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalization {
    pub u0: f64,
    pub ux0: f64,
    pub uy0: f64,
    pub uyy0: f64,
}

impl Normalization {
    pub fn within(&self, tol: f64) -> bool {
        self.u0.abs() <= tol
            && self.ux0.abs() <= tol
            && self.uy0.abs() <= tol
            && (self.uyy0 - 1.0).abs() <= tol
    }
}

/// Step for the second difference of `y ↦ u(iy)`.
pub const UYY_STEP: f64 = 1e-4;

pub fn normalization_check<F: LogModulus + ?Sized>(cf: &F) -> Result<Normalization> {
    let origin = cf.eval_log_mod(Complex64::new(0.0, 0.0))?;
    let up = cf.eval_log_mod(Complex64::new(0.0, UYY_STEP))?;
    let down = cf.eval_log_mod(Complex64::new(0.0, -UYY_STEP))?;
    Ok(Normalization {
        u0: origin.u,
        ux0: origin.u_x(),
        uy0: origin.u_y(),
        uyy0: (up.u - 2.0 * origin.u + down.u) / (UYY_STEP * UYY_STEP),
    })
}
