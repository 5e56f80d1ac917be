//! Discrete harmonic measure on the square `Q = (0,2) × (−1,1)` and the
//! boundary derivative of its Poisson kernel at the point `0`.
//!
//! Harmonic measure `ω(z, A)` is the harmonic function in `Q` with boundary
//! values `1_A`; its boundary density is the Poisson kernel `P(z, ζ)`. Since
//! `ω(0, A) = 0` for arcs away from `0`, the one-sided quotient
//! `ω((h, 0), A) / (h·|A|)` estimates the arc average of `P_x(0, ζ)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::{Error, Result};

/// Residual `max |u − mean of neighbours|` reached by the solver.
pub const SOLVER_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `x = 0`, parametrized by `y ∈ [−1, 1]`.
    Left,
    /// `x = 2`, parametrized by `y ∈ [−1, 1]`.
    Right,
    /// `y = −1`, parametrized by `x ∈ [0, 2]`.
    Bottom,
    /// `y = 1`, parametrized by `x ∈ [0, 2]`.
    Top,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    fn range(self) -> (f64, f64) {
        match self {
            Side::Left | Side::Right => (-1.0, 1.0),
            Side::Bottom | Side::Top => (0.0, 2.0),
        }
    }

    pub fn mirror(self) -> Side {
        match self {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
            s => s,
        }
    }
}

/// A closed segment `[from, to]` of one side, in that side's parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryArc {
    pub side: Side,
    pub from: f64,
    pub to: f64,
}

impl BoundaryArc {
    pub fn new(side: Side, from: f64, to: f64) -> Result<Self> {
        let (lo, hi) = side.range();
        if !(lo <= from && from < to && to <= hi) {
            return Err(Error::InvalidParameter(format!(
                "arc [{from}, {to}] does not fit side {side:?}"
            )));
        }
        Ok(Self { side, from, to })
    }

    pub fn whole_side(side: Side) -> Self {
        let (from, to) = side.range();
        Self { side, from, to }
    }

    pub fn length(&self) -> f64 {
        self.to - self.from
    }

    /// Reflection under `y ↦ −y`.
    pub fn mirror(&self) -> Self {
        match self.side {
            Side::Left | Side::Right => Self {
                side: self.side,
                from: -self.to,
                to: -self.from,
            },
            Side::Top | Side::Bottom => Self {
                side: self.side.mirror(),
                ..*self
            },
        }
    }

    pub fn midpoint(&self) -> (f64, f64) {
        let s = 0.5 * (self.from + self.to);
        match self.side {
            Side::Left => (0.0, s),
            Side::Right => (2.0, s),
            Side::Bottom => (s, -1.0),
            Side::Top => (s, 1.0),
        }
    }

    /// Boundary datum at a node with side parameter `s`: 1 inside, 1/2 at an
    /// endpoint shared with a neighbouring arc, 0 outside.
    fn weight(&self, s: f64, h: f64) -> f64 {
        let eps = 1e-9 * h;
        let (lo, hi) = self.side.range();
        let at = |e: f64| (s - e).abs() <= eps;
        if at(self.from) {
            if at(lo) {
                1.0
            } else {
                0.5
            }
        } else if at(self.to) {
            if at(hi) {
                1.0
            } else {
                0.5
            }
        } else if s > self.from && s < self.to {
            1.0
        } else {
            0.0
        }
    }
}

/// Node lattice of `Q` with spacing `h = 1/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquareGrid {
    pub h: f64,
    /// Nodes per unit length.
    pub n: usize,
}

impl SquareGrid {
    pub fn new(h: f64) -> Result<Self> {
        if !(h > 0.0 && h <= 1.0 / 16.0) {
            return Err(Error::InvalidParameter(format!("mesh width {h} must be in (0, 1/16]")));
        }
        let n = (1.0 / h).round();
        if (n * h - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("1/h must be an integer, got h = {h}")));
        }
        Ok(Self { h, n: n as usize })
    }

    /// Nodes per axis, `2n + 1`.
    pub fn width(&self) -> usize {
        2 * self.n + 1
    }

    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        (i as f64 * self.h, -1.0 + j as f64 * self.h)
    }

    /// Side owning boundary node `(i, j)`, with its side parameter.
    fn boundary_side(&self, i: usize, j: usize) -> Option<(Side, f64)> {
        let m = 2 * self.n;
        let (x, y) = self.node(i, j);
        if i == 0 {
            Some((Side::Left, y))
        } else if i == m {
            Some((Side::Right, y))
        } else if j == 0 {
            Some((Side::Bottom, x))
        } else if j == m {
            Some((Side::Top, x))
        } else {
            None
        }
    }

    /// Partition of one side into `count` equal arcs.
    pub fn side_arcs(&self, side: Side, count: usize) -> Result<Vec<BoundaryArc>> {
        if count == 0 || !(2 * self.n).is_multiple_of(count) {
            return Err(Error::InvalidParameter(format!(
                "{count} arcs per side do not align with a mesh of {} cells per side",
                2 * self.n
            )));
        }
        let (lo, hi) = side.range();
        let len = (hi - lo) / count as f64;
        Ok((0..count)
            .map(|k| BoundaryArc {
                side,
                from: lo + len * k as f64,
                to: if k + 1 == count { hi } else { lo + len * (k + 1) as f64 },
            })
            .collect())
    }

    /// Partition of all of `∂Q`.
    pub fn full_partition(&self, per_side: usize) -> Result<Vec<BoundaryArc>> {
        let mut arcs = Vec::new();
        for side in Side::ALL {
            arcs.extend(self.side_arcs(side, per_side)?);
        }
        Ok(arcs)
    }
}

/// Values at every node, row-major in `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: SquareGrid,
    pub values: Vec<f64>,
    pub sweeps: usize,
    pub residual: f64,
}

impl GridFunction {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid.width() + i]
    }

    /// Value at the node nearest to `(x, y)`.
    pub fn at_point(&self, x: f64, y: f64) -> f64 {
        let i = (x / self.grid.h).round() as usize;
        let j = ((y + 1.0) / self.grid.h).round() as usize;
        self.at(i, j)
    }

    pub fn interior(&self) -> impl Iterator<Item = f64> + '_ {
        let w = self.grid.width();
        (1..w - 1).flat_map(move |j| (1..w - 1).map(move |i| self.at(i, j)))
    }
}

/// Discrete harmonic measure of a union of arcs: the 5-point harmonic grid
/// function with boundary data `Σ 1_arc`, by red-black SOR.
pub fn harmonic_measure(arcs: &[BoundaryArc], h: f64) -> Result<GridFunction> {
    let grid = SquareGrid::new(h)?;
    let w = grid.width();
    let m = w - 1;
    let mut u = vec![0.0; w * w];
    for j in 0..w {
        for i in 0..w {
            if let Some((side, s)) = grid.boundary_side(i, j) {
                u[j * w + i] = arcs
                    .iter()
                    .filter(|a| a.side == side)
                    .map(|a| a.weight(s, h))
                    .sum();
            }
        }
    }

    let omega = 2.0 / (1.0 + (std::f64::consts::PI / m as f64).sin());
    let max_sweeps = 100 * m + 1000;
    let mut residual = f64::INFINITY;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        for color in 0..2 {
            for j in 1..m {
                let start = 1 + (j + color + 1) % 2;
                let row = j * w;
                for i in (start..m).step_by(2) {
                    let k = row + i;
                    let avg = 0.25 * (u[k - 1] + u[k + 1] + u[k - w] + u[k + w]);
                    u[k] += omega * (avg - u[k]);
                }
            }
        }
        sweeps += 1;
        if sweeps % 10 == 0 {
            residual = max_residual(&u, w);
            if residual < SOLVER_TOL {
                break;
            }
        }
    }
    if !(residual < SOLVER_TOL) {
        return Err(Error::SolverNotConverged {
            residual,
            iterations: sweeps,
        });
    }
    Ok(GridFunction {
        grid,
        values: u,
        sweeps,
        residual,
    })
}

fn max_residual(u: &[f64], w: usize) -> f64 {
    let mut r = 0.0f64;
    for j in 1..w - 1 {
        for i in 1..w - 1 {
            let k = j * w + i;
            let avg = 0.25 * (u[k - 1] + u[k + 1] + u[k - w] + u[k + w]);
            r = r.max((avg - u[k]).abs());
        }
    }
    r
}

/// `ω((h, 0), arc) / (h·|arc|)`, the arc average of `P_x(0, ζ)`.
pub fn kernel_x_derivative_at_origin(arc: &BoundaryArc, h: f64) -> Result<f64> {
    if arc.side == Side::Left {
        return Err(Error::ArcExcluded);
    }
    let omega = harmonic_measure(std::slice::from_ref(arc), h)?;
    let n = omega.grid.n;
    Ok(omega.at(1, n) / (h * arc.length()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcEstimate {
    pub arc_id: usize,
    pub arc: BoundaryArc,
    pub midpoint: (f64, f64),
    pub kernel_x_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelEstimate {
    pub h: f64,
    pub arcs_per_side: usize,
    pub arcs: Vec<ArcEstimate>,
    pub c2_hat: f64,
    pub argmin: usize,
}

/// Minimum of the arc-averaged kernel derivative over a partition of the
/// bottom, right and top sides.
pub fn c2_estimate(h: f64, arcs_per_side: usize) -> Result<KernelEstimate> {
    if arcs_per_side < 8 {
        return Err(Error::InvalidParameter(format!(
            "arcs_per_side = {arcs_per_side} must be at least 8"
        )));
    }
    let grid = SquareGrid::new(h)?;
    let mut arcs = grid.side_arcs(Side::Bottom, arcs_per_side)?;
    arcs.extend(grid.side_arcs(Side::Right, arcs_per_side)?);
    let mut top = grid.side_arcs(Side::Top, arcs_per_side)?;
    top.reverse();
    arcs.extend(top);

    let values: Vec<f64> = arcs
        .par_iter()
        .map(|arc| kernel_x_derivative_at_origin(arc, h))
        .collect::<Result<_>>()?;
    let estimates: Vec<ArcEstimate> = arcs
        .iter()
        .zip(values)
        .enumerate()
        .map(|(arc_id, (arc, v))| ArcEstimate {
            arc_id,
            arc: *arc,
            midpoint: arc.midpoint(),
            kernel_x_estimate: v,
        })
        .collect();
    // mirror-image arcs tie up to rounding; the first one in order wins
    let c2_hat = estimates.iter().map(|e| e.kernel_x_estimate).fold(f64::INFINITY, f64::min);
    let argmin = estimates
        .iter()
        .position(|e| e.kernel_x_estimate <= c2_hat * (1.0 + 1e-9))
        .unwrap_or(0);
    Ok(KernelEstimate {
        h,
        arcs_per_side,
        arcs: estimates,
        c2_hat,
        argmin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = 1.0 / 16.0;

    #[test]
    fn whole_boundary_gives_one() {
        let arcs: Vec<_> = Side::ALL.iter().map(|&s| BoundaryArc::whole_side(s)).collect();
        let w = harmonic_measure(&arcs, H).unwrap();
        assert!(w.interior().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn reflection_symmetries() {
        let right = harmonic_measure(&[BoundaryArc::whole_side(Side::Right)], H).unwrap();
        let left = harmonic_measure(&[BoundaryArc::whole_side(Side::Left)], H).unwrap();
        let c = right.at_point(1.0, 0.0);
        assert!(c > 0.0 && c < 1.0);
        assert!((c - left.at_point(1.0, 0.0)).abs() < 1e-11);

        let top = harmonic_measure(&[BoundaryArc::whole_side(Side::Top)], H).unwrap();
        let bottom = harmonic_measure(&[BoundaryArc::whole_side(Side::Bottom)], H).unwrap();
        assert!((top.at_point(1.0, 0.0) - bottom.at_point(1.0, 0.0)).abs() < 1e-11);
        // four sides of the central point of a square share the measure
        assert!((c + left.at_point(1.0, 0.0) + 2.0 * top.at_point(1.0, 0.0) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn left_arcs_are_excluded() {
        let arc = BoundaryArc::new(Side::Left, 0.25, 0.5).unwrap();
        assert_eq!(kernel_x_derivative_at_origin(&arc, H), Err(Error::ArcExcluded));
    }

    #[test]
    fn kernel_is_positive_off_the_left_edge() {
        let arcs = [
            BoundaryArc::whole_side(Side::Right),
            BoundaryArc::whole_side(Side::Top),
            BoundaryArc::whole_side(Side::Bottom),
        ];
        for a in &arcs {
            assert!(kernel_x_derivative_at_origin(a, H).unwrap() > 0.0);
        }
    }

    #[test]
    fn arc_validation() {
        assert!(BoundaryArc::new(Side::Top, 1.0, 0.5).is_err());
        assert!(BoundaryArc::new(Side::Right, -1.5, 0.0).is_err());
        let g = SquareGrid::new(1.0 / 32.0).unwrap();
        assert!(g.side_arcs(Side::Top, 10).is_err());
        assert!(SquareGrid::new(0.1).is_err());
        assert!(SquareGrid::new(0.03).is_err());
        assert!(c2_estimate(1.0 / 32.0, 4).is_err());
    }
}
