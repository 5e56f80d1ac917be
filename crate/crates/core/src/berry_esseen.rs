//! The Berry–Esseen smoothing inequality
//!
//! ```text
//! sup_t |F_{X*}(t) − Φ(t)| ≤ (1/π) ∫_{−T}^{T} |f_{X*}(x) − e^{−x²/2}| / |x| dx + c/T
//! ```
//!
//! and the chain that feeds it `T = Δ/(4c₀)` and the split point
//! `a = (Δ/c₀)^{1/3}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::charfn::CharFn;
use crate::dist::{kolmogorov_distance, LatticeDist};
use crate::quadrature::{integrate_segments, Quadrature, DEFAULT_BUDGET};
use crate::zero_strip::strip_report;
use crate::{Error, Result};

/// `24·m/π` with `m = sup Φ′ = 1/√(2π)`.
pub fn feller_constant() -> f64 {
    24.0 / (PI * (2.0 * PI).sqrt())
}

/// Absolute tolerance of the smoothing integral.
pub const INTEGRAL_TOL: f64 = 1e-10;

/// Below this `|x|` the integrand is replaced by its limit 0.
pub const REMOVABLE_RADIUS: f64 = 1e-8;

/// `|f(x) − e^{−x²/2}| / |x|`, and `0` at the removable point.
pub fn be_integrand(cf: &CharFn, x: f64) -> f64 {
    if x.abs() < REMOVABLE_RADIUS {
        return 0.0;
    }
    let gauss = (-0.5 * x * x).exp();
    // f vanishes (to working precision) where evaluation is refused
    let f = cf.value(Complex64::new(x, 0.0)).unwrap_or(Complex64::new(0.0, 0.0));
    (f - gauss).norm() / x.abs()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeBound {
    pub rhs: f64,
    pub integral: f64,
    /// `∫` over `|x| ≤ a` (the whole range when there is no split).
    pub integral_core: f64,
    pub integral_tail: f64,
    pub error_estimate: f64,
    pub subintervals: usize,
}

/// Right-hand side of the smoothing inequality with knots at `−T, 0, T`.
pub fn be_bound(cf: &CharFn, t: f64, cbe: f64) -> Result<BeBound> {
    be_bound_split(cf, t, f64::INFINITY, cbe)
}

/// As [`be_bound`], with extra knots at `±a` when `a < T` so the integral
/// splits into a core `|x| ≤ a` and a tail `a ≤ |x| ≤ T`.
pub fn be_bound_split(cf: &CharFn, t: f64, a: f64, cbe: f64) -> Result<BeBound> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("T = {t} must be positive and finite")));
    }
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("split point a = {a} must be positive")));
    }
    let split = a < t;
    let knots: Vec<f64> = if split {
        vec![-t, -a, 0.0, a, t]
    } else {
        vec![-t, 0.0, t]
    };
    let parts = integrate_segments(|x| be_integrand(cf, x), &knots, INTEGRAL_TOL, DEFAULT_BUDGET)?;
    let sum = |qs: &[&Quadrature]| qs.iter().map(|q| q.value).sum::<f64>();
    let (core, tail) = if split {
        (sum(&[&parts[1], &parts[2]]), sum(&[&parts[0], &parts[3]]))
    } else {
        (sum(&[&parts[0], &parts[1]]), 0.0)
    };
    let integral = core + tail;
    Ok(BeBound {
        rhs: integral / PI + cbe / t,
        integral,
        integral_core: core,
        integral_tail: tail,
        error_estimate: parts.iter().map(|q| q.error).sum(),
        subintervals: parts.iter().map(|q| q.subintervals).sum(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BEReport {
    pub delta: f64,
    pub sigma: f64,
    #[serde(rename = "Delta")]
    pub big_delta: f64,
    pub c0_eff: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub a: f64,
    #[serde(rename = "cBE")]
    pub cbe: f64,
    pub integral_total: f64,
    pub integral_core: f64,
    pub integral_tail: f64,
    pub rhs_bound: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub c1_hat: f64,
    pub satisfied: bool,
}

/// Zero-free strip → `Δ = δσ` → `T`, `a` → smoothing bound, against the exact
/// Kolmogorov distance; `c1_hat = K·σ·δ`.
pub fn theorem2_chain(dist: &LatticeDist, c0_eff: f64, cbe: f64) -> Result<BEReport> {
    if !(c0_eff > 0.0) {
        return Err(Error::InvalidParameter(format!("c0_eff = {c0_eff} must be positive")));
    }
    let strip = strip_report(dist)?;
    if !strip.big_delta.is_finite() || strip.big_delta <= c0_eff {
        return Err(Error::StripTooNarrow {
            delta: strip.big_delta,
            c0_eff,
        });
    }
    let cf = CharFn::standardized(dist)?;
    let t = strip.big_delta / (4.0 * c0_eff);
    let a = (strip.big_delta / c0_eff).cbrt();
    let bound = be_bound_split(&cf, t, a, cbe)?;
    let k = kolmogorov_distance(dist)?.distance;
    Ok(BEReport {
        delta: strip.delta,
        sigma: strip.sigma,
        big_delta: strip.big_delta,
        c0_eff,
        t,
        a,
        cbe,
        integral_total: bound.integral,
        integral_core: bound.integral_core,
        integral_tail: bound.integral_tail,
        rhs_bound: bound.rhs,
        k,
        c1_hat: k * strip.sigma * strip.delta,
        satisfied: k <= bound.rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bernoulli_half() -> LatticeDist {
        LatticeDist::from_weights(0, vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn feller_constant_value() {
        // 24/(π√(2π)) to 20 digits
        assert_abs_diff_eq!(feller_constant(), 3.0476945248435665497, epsilon = 1e-15);
    }

    #[test]
    fn integrand_examples() {
        assert_eq!(be_integrand(&CharFn::Normal, 1.7), 0.0);
        let cf = CharFn::standardized(&bernoulli_half()).unwrap();
        assert_eq!(be_integrand(&cf, 0.0), 0.0);
        // |cos 1 − e^{−1/2}|
        assert_abs_diff_eq!(be_integrand(&cf, 1.0), 0.06622835384449370620, epsilon = 1e-15);
    }

    #[test]
    fn normal_bound() {
        let b = be_bound(&CharFn::Normal, 10.0, 3.0463).unwrap();
        assert_eq!(b.integral, 0.0);
        assert_abs_diff_eq!(b.rhs, 0.30463, epsilon = 1e-15);
    }

    #[test]
    fn bernoulli_bound_dominates_distance() {
        let d = bernoulli_half();
        let cf = CharFn::standardized(&d).unwrap();
        let k = kolmogorov_distance(&d).unwrap().distance;
        let b2 = be_bound(&cf, 2.0, 3.0463).unwrap();
        assert!(b2.integral > 0.0);
        assert!(k <= b2.rhs);
        let b4 = be_bound(&cf, 4.0, 3.0463).unwrap();
        assert_abs_diff_eq!(b4.rhs - b4.integral / PI, (b2.rhs - b2.integral / PI) / 2.0, epsilon = 1e-15);
        assert!(b4.integral >= b2.integral);
    }

    #[test]
    fn split_is_additive() {
        let cf = CharFn::standardized(&LatticeDist::binomial(20, 0.3).unwrap()).unwrap();
        let whole = be_bound(&cf, 3.0, 3.0).unwrap();
        let split = be_bound_split(&cf, 3.0, 1.2, 3.0).unwrap();
        assert!(split.integral_tail > 0.0);
        assert_abs_diff_eq!(split.integral_core + split.integral_tail, split.integral, epsilon = 1e-15);
        assert_abs_diff_eq!(split.integral, whole.integral, epsilon = 2e-10);
    }

    #[test]
    fn chain_examples() {
        let r = theorem2_chain(&LatticeDist::binomial(256, 0.5).unwrap(), 1.0, 3.0463).unwrap();
        assert_abs_diff_eq!(r.big_delta, 8.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(r.t, 2.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(r.a, (8.0 * PI).cbrt(), epsilon = 1e-12);
        assert!(r.satisfied);
        assert_abs_diff_eq!(r.k, 0.02490955496807007562, epsilon = 1e-14);
        assert_abs_diff_eq!(r.c1_hat, r.k * 8.0 * PI, epsilon = 1e-13);

        let b = theorem2_chain(&bernoulli_half(), 1.0, 3.0463).unwrap();
        assert!(b.satisfied);

        let err = theorem2_chain(&bernoulli_half(), 2.0, 3.0463).unwrap_err();
        assert!(matches!(err, Error::StripTooNarrow { .. }));
    }
}
