//! Zeros of the probability generating polynomial and the zero-free strip.
//!
//! For a lattice law `f_X(z) = e^{iz·offset} P(e^{iz})` with
//! `P(w) = Σ p_k w^k`, so `f_X(z) = 0` exactly when `e^{iz}` is a root `w` of
//! `P`, i.e. `z = Arg w + 2πm − i·log|w|`. The zero nearest to the imaginary
//! axis therefore has `|Re z| = min |Arg w|`.

use num_complex::Complex64;
use serde::Serialize;

use crate::dist::{moments, Form, LatticeDist};
use crate::{Error, Result};

/// Largest degree accepted for coefficient-form root finding.
pub const MAX_RAW_DEGREE: usize = 4096;
/// Largest tolerated scaled residual `|P(w)| / (max|a_k| · max(1,|w|)^n)`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
/// Iteration stops once no root moves by more than this (relative to
/// `max(1, |w|)`).
pub const MOVEMENT_TOLERANCE: f64 = 1e-12;

const MAX_ITERATIONS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Scaled residual per root.
    pub residuals: Vec<f64>,
}

impl RootSet {
    pub fn empty() -> Self {
        Self {
            roots: Vec::new(),
            residuals: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Roots of `P(w) = Σ p_k w^k` for the trimmed weights of `dist`.
///
/// Bernoulli products have the closed-form roots `−(1 − pᵢ)/pᵢ`; raw weights
/// go through simultaneous (Aberth–Ehrlich) iteration.
pub fn pgf_roots(dist: &LatticeDist) -> Result<RootSet> {
    if dist.len() < 2 {
        return Err(Error::InvalidDistribution(
            "root finding needs at least two support points".into(),
        ));
    }
    let coeffs = dist.weights();
    let roots = match dist.form() {
        Form::BernoulliProduct { ps } if dist.offset() == 0 && ps.len() + 1 == coeffs.len() => {
            ps.iter().map(|p| Complex64::new(-(1.0 - p) / p, 0.0)).collect()
        }
        _ => polynomial_roots(coeffs)?,
    };
    let residuals = roots.iter().map(|&w| scaled_residual(coeffs, w)).collect();
    Ok(RootSet { roots, residuals })
}

/// All complex roots of `Σ a_k w^k` (ascending coefficients, `a_0` and `a_n`
/// nonzero).
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let first = coeffs.iter().position(|&a| a != 0.0);
    let last = coeffs.iter().rposition(|&a| a != 0.0);
    let coeffs = match (first, last) {
        (Some(f), Some(l)) => &coeffs[f..=l],
        _ => return Err(Error::InvalidParameter("zero polynomial".into())),
    };
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > MAX_RAW_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: n,
            cap: MAX_RAW_DEGREE,
        });
    }
    if n == 1 {
        return Ok(vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)]);
    }
    let poly = Poly::new(coeffs);
    let mut worst = f64::INFINITY;
    for attempt in 0..3 {
        let start = poly.initial_guesses(attempt);
        let mut roots = poly.aberth(start);
        poly.collapse_multiple_roots(&mut roots);
        let residual = roots
            .iter()
            .map(|&w| scaled_residual(coeffs, w))
            .fold(0.0, f64::max);
        if residual <= RESIDUAL_TOLERANCE && roots.iter().all(|w| w.is_finite()) {
            return Ok(roots);
        }
        worst = worst.min(residual);
    }
    Err(Error::RootFindingDiverged { residual: worst })
}

/// `|P(w)| / (max|a_k| · max(1, |w|)^n)`, evaluated through the reversed
/// polynomial outside the unit disc so nothing overflows.
pub fn scaled_residual(coeffs: &[f64], w: Complex64) -> f64 {
    let scale = coeffs.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let v = if w.norm() <= 1.0 {
        horner(coeffs.iter().rev(), w)
    } else {
        horner(coeffs.iter(), w.inv())
    };
    v.norm() / scale
}

fn horner<'a>(coeffs_high_to_low: impl Iterator<Item = &'a f64>, w: Complex64) -> Complex64 {
    coeffs_high_to_low.fold(Complex64::new(0.0, 0.0), |acc, &a| acc * w + a)
}

struct Poly<'a> {
    /// Ascending.
    a: &'a [f64],
    n: usize,
}

/// `P`, `P′` and a running rounding-error bound for `P` at a point.
struct PolyEval {
    /// `P(w)/P′(w)`.
    newton: Complex64,
    /// `log|P(w)|`, or of the error bound when `P(w)` is numerically zero.
    log_abs: f64,
    /// `P(w)` is indistinguishable from zero at working precision.
    at_noise: bool,
}

impl<'a> Poly<'a> {
    fn new(a: &'a [f64]) -> Self {
        Self { a, n: a.len() - 1 }
    }

    /// Points on a circle of radius `(|a_0|/|a_n|)^{1/n}`, the geometric mean
    /// of the root moduli; the set is closed under conjugation.
    fn initial_guesses(&self, attempt: usize) -> Vec<Complex64> {
        let n = self.n as f64;
        let radius = ((self.a[0].abs().ln() - self.a[self.n].abs().ln()) / n).exp();
        let (stretch, twist) = match attempt {
            0 => (1.0, 0.0),
            1 => (1.1, 0.37),
            _ => (0.9, 1.13),
        };
        (0..self.n)
            .map(|k| {
                let theta = std::f64::consts::PI * (2 * k + 1) as f64 / n + twist / n;
                Complex64::from_polar(radius * stretch, theta)
            })
            .collect()
    }

    fn eval(&self, w: Complex64) -> PolyEval {
        let eps = f64::EPSILON;
        let n = self.n as f64;
        if w.norm() <= 1.0 {
            let mut p = Complex64::new(0.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            let mut bound = 0.0;
            let r = w.norm();
            for &c in self.a.iter().rev() {
                dp = dp * w + p;
                p = p * w + c;
                bound = bound * r + c.abs();
            }
            let noise = 4.0 * n * eps * bound;
            let at_noise = p.norm() <= noise;
            PolyEval {
                newton: p / dp,
                log_abs: p.norm().max(noise).ln(),
                at_noise,
            }
        } else {
            // P(w) = w^n R(v), v = 1/w, R(v) = Σ a_k v^{n−k}.
            let v = w.inv();
            let mut r = Complex64::new(0.0, 0.0);
            let mut dr = Complex64::new(0.0, 0.0);
            let mut bound = 0.0;
            let rv = v.norm();
            for &c in self.a.iter() {
                dr = dr * v + r;
                r = r * v + c;
                bound = bound * rv + c.abs();
            }
            let noise = 4.0 * n * eps * bound;
            let at_noise = r.norm() <= noise;
            PolyEval {
                newton: w / (n - v * dr / r),
                log_abs: n * w.norm().ln() + r.norm().max(noise).ln(),
                at_noise,
            }
        }
    }

    /// Gauss–Seidel Aberth–Ehrlich iteration. A root is frozen once its step
    /// is below tolerance or `P` there is at rounding level.
    fn aberth(&self, mut z: Vec<Complex64>) -> Vec<Complex64> {
        let n = z.len();
        let mut frozen = vec![false; n];
        for _ in 0..MAX_ITERATIONS {
            let mut moved = false;
            for i in 0..n {
                if frozen[i] {
                    continue;
                }
                let e = self.eval(z[i]);
                if e.at_noise {
                    frozen[i] = true;
                    continue;
                }
                let mut repel = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    if j != i {
                        let d = z[i] - z[j];
                        if d.norm() > 0.0 {
                            repel += d.inv();
                        }
                    }
                }
                let step = e.newton / (Complex64::new(1.0, 0.0) - e.newton * repel);
                if !step.is_finite() {
                    frozen[i] = true;
                    continue;
                }
                z[i] -= step;
                if step.norm() <= MOVEMENT_TOLERANCE * z[i].norm().max(1.0) {
                    frozen[i] = true;
                } else {
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        z
    }

    /// Replace clusters that approximate a multiple root by copies of the
    /// refined multiple root.
    ///
    /// Approximations to an `m`-fold root only reach accuracy `ε^{1/m}`, but
    /// their centroid is well conditioned and Newton's method on `P^{(m−1)}`
    /// (for which the root is simple) sharpens it. Clusters come from
    /// overlapping inclusion discs `n·|P(wᵢ)| / |a_n Π_{j≠i}(wᵢ − wⱼ)|`. A
    /// cluster is collapsed only when the Taylor coefficients of orders
    /// `0..m` at the refined centre all vanish to working precision.
    fn collapse_multiple_roots(&self, roots: &mut [Complex64]) {
        let n = roots.len();
        let log_lead = self.a[self.n].abs().ln();
        let log_radius: Vec<f64> = (0..n)
            .map(|i| {
                let e = self.eval(roots[i]);
                let mut denom = log_lead;
                for j in 0..n {
                    if j != i {
                        denom += (roots[i] - roots[j]).norm().ln();
                    }
                }
                (n as f64).ln() + e.log_abs - denom
            })
            .collect();

        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            let mut k = i;
            while parent[k] != r {
                let next = parent[k];
                parent[k] = r;
                k = next;
            }
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = (roots[i] - roots[j]).norm();
                let reach = log_radius[i].exp() + log_radius[j].exp();
                if d <= reach || d == 0.0 {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = clusters.len();
                clusters.push(Vec::new());
            }
            clusters[slot[r]].push(i);
        }

        for members in clusters.into_iter().filter(|m| m.len() > 1) {
            let m = members.len();
            let centroid =
                members.iter().map(|&i| roots[i]).sum::<Complex64>() / m as f64;
            if let Some(center) = self.refine_multiple_root(centroid, m) {
                for &i in &members {
                    roots[i] = center;
                }
            }
        }
    }

    /// Newton on the `(m−1)`-th derivative from `start`, then verify
    /// multiplicity `m` through the Taylor coefficients at the result.
    fn refine_multiple_root(&self, start: Complex64, m: usize) -> Option<Complex64> {
        let mut c = start;
        for _ in 0..50 {
            let t = self.taylor(c, m + 1)?;
            // t[k] = P^{(k)}(c)/k!; Newton on P^{(m−1)}: step = t[m−1] / (m·t[m]).
            let step = t[m - 1].0 / (t[m].0 * m as f64);
            if !step.is_finite() {
                return None;
            }
            c -= step;
            if step.norm() <= f64::EPSILON * c.norm().max(1.0) {
                break;
            }
        }
        let t = self.taylor(c, m)?;
        let tol = 64.0 * self.n as f64 * f64::EPSILON;
        t.iter()
            .all(|&(value, bound)| value.norm() <= tol * bound)
            .then_some(c)
    }

    /// Taylor coefficients `P^{(k)}(c)/k!` for `k < count` by repeated
    /// synthetic division, each paired with `Σ_j C(j,k)|a_j||c|^{j−k}`.
    fn taylor(&self, c: Complex64, count: usize) -> Option<Vec<(Complex64, f64)>> {
        let mut b: Vec<Complex64> = self.a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let mut bb: Vec<f64> = self.a.iter().map(|x| x.abs()).collect();
        let r = c.norm();
        let mut out = Vec::with_capacity(count);
        for k in 0..count.min(self.n + 1) {
            let len = self.n + 1 - k;
            for j in (0..len - 1).rev() {
                b[j] = b[j] + c * b[j + 1];
                bb[j] += r * bb[j + 1];
            }
            out.push((b[0], bb[0]));
            if !b[0].is_finite() || !bb[0].is_finite() {
                return None;
            }
            b.remove(0);
            bb.remove(0);
        }
        (out.len() == count).then_some(out)
    }
}

/// `δ = min |Arg w|` over the roots; `+∞` for an empty set.
pub fn zero_free_delta(rs: &RootSet) -> f64 {
    nearest_root(rs).map_or(f64::INFINITY, |w| w.arg().abs())
}

/// Root attaining the minimal `|Arg w|`, ties going to the smallest `|w|`.
pub fn nearest_root(rs: &RootSet) -> Option<Complex64> {
    rs.roots.iter().copied().reduce(|best, w| {
        let (a, b) = (w.arg().abs(), best.arg().abs());
        if a < b || (a == b && w.norm() < best.norm()) {
            w
        } else {
            best
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StripReport {
    /// Half-width of the zero-free strip of `f_X`.
    pub delta: f64,
    pub sigma: f64,
    /// `δσ`, the half-width of the zero-free strip of `f_{X*}`.
    #[serde(rename = "Delta")]
    pub big_delta: f64,
    /// Root of `P` responsible for `δ`.
    pub nearest_root: Option<Complex64>,
    pub roots: RootSet,
}

pub fn strip_report(dist: &LatticeDist) -> Result<StripReport> {
    let std = moments(dist)?;
    let roots = pgf_roots(dist)?;
    let delta = zero_free_delta(&roots);
    Ok(StripReport {
        delta,
        sigma: std.sigma,
        big_delta: delta * std.sigma,
        nearest_root: nearest_root(&roots),
        roots,
    })
}
