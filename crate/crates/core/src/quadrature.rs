//! Globally adaptive Simpson quadrature with a Richardson error estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

/// Default cap on the number of subintervals.
pub const DEFAULT_BUDGET: usize = 100_000;

/// Pieces each knot segment starts with, before any refinement.
const INITIAL_PIECES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subintervals: usize,
}

/// Integral over each consecutive pair of `knots`, refined jointly until the
/// summed error estimate is below `abs_tol`.
///
/// Refinement always splits the interval with the largest error estimate, so
/// knots placed at kinks or removable points keep them on interval ends.
pub fn integrate_segments<F: Fn(f64) -> f64>(
    f: F,
    knots: &[f64],
    abs_tol: f64,
    budget: usize,
) -> Result<Vec<Quadrature>> {
    if knots.len() < 2 || knots.windows(2).any(|k| !(k[0] <= k[1])) {
        return Err(Error::InvalidParameter("knots must be nondecreasing, at least two".into()));
    }
    let segments = knots.len() - 1;
    let mut heap = BinaryHeap::new();
    for s in 0..segments {
        let (a, b) = (knots[s], knots[s + 1]);
        if a == b {
            continue;
        }
        for k in 0..INITIAL_PIECES {
            let lo = a + (b - a) * k as f64 / INITIAL_PIECES as f64;
            let hi = if k + 1 == INITIAL_PIECES {
                b
            } else {
                a + (b - a) * (k + 1) as f64 / INITIAL_PIECES as f64
            };
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            heap.push(Piece::new(&f, s, lo, hi, fa, fm, fb));
        }
    }

    let mut count = heap.len();
    let mut total_err: f64 = heap.iter().map(|p| p.err).sum();
    while total_err > abs_tol && count < budget {
        let Some(p) = heap.pop() else { break };
        let m = 0.5 * (p.a + p.b);
        let left = Piece::new(&f, p.segment, p.a, m, p.fa, p.fl, p.fm);
        let right = Piece::new(&f, p.segment, m, p.b, p.fm, p.fr, p.fb);
        total_err += left.err + right.err - p.err;
        heap.push(left);
        heap.push(right);
        count += 1;
        // resync against drift in the running sum
        if count % 1024 == 0 {
            total_err = heap.iter().map(|p| p.err).sum();
        }
    }
    total_err = heap.iter().map(|p| p.err).sum();
    if !(total_err <= abs_tol) {
        return Err(Error::QuadratureNotConverged {
            tolerance: abs_tol,
            estimate: total_err,
            budget,
        });
    }

    let mut out = vec![
        Quadrature {
            value: 0.0,
            error: 0.0,
            subintervals: 0,
        };
        segments
    ];
    let mut pieces = heap.into_vec();
    pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
    for p in pieces {
        let q = &mut out[p.segment];
        q.value += p.value;
        q.error += p.err;
        q.subintervals += 1;
    }
    Ok(out)
}

/// `∫_a^b f` with the default budget.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<Quadrature> {
    Ok(integrate_segments(f, &[a, b], abs_tol, DEFAULT_BUDGET)?[0])
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    segment: usize,
    a: f64,
    b: f64,
    fa: f64,
    fl: f64,
    fm: f64,
    fr: f64,
    fb: f64,
    value: f64,
    err: f64,
}

impl Piece {
    fn new<F: Fn(f64) -> f64>(f: &F, segment: usize, a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> Self {
        let h = b - a;
        let fl = f(a + 0.25 * h);
        let fr = f(a + 0.75 * h);
        let coarse = h / 6.0 * (fa + 4.0 * fm + fb);
        let fine = h / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
        let diff = (fine - coarse) / 15.0;
        Piece {
            segment,
            a,
            b,
            fa,
            fl,
            fm,
            fr,
            fb,
            value: fine + diff,
            err: if diff.is_nan() { f64::INFINITY } else { diff.abs() },
        }
    }
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}
