//! Finite point sets in the complex plane.

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Grid {
    /// Tensor grid on `[center.re − half_width, center.re + half_width] ×
    /// [center.im − half_height, center.im + half_height]`, endpoints included.
    Rect {
        center: Complex64,
        half_width: f64,
        half_height: f64,
        x_steps: usize,
        y_steps: usize,
    },
    /// Polar grid of the closed disc: radii `radius·k/radial_steps` for
    /// `k = 1..=radial_steps`, angles `2πj/angular_steps`.
    Polar {
        center: Complex64,
        radius: f64,
        radial_steps: usize,
        angular_steps: usize,
    },
}

impl Grid {
    pub fn square(half: f64, steps: usize) -> Result<Self> {
        Self::rect(Complex64::new(0.0, 0.0), half, half, steps, steps)
    }

    pub fn rect(
        center: Complex64,
        half_width: f64,
        half_height: f64,
        x_steps: usize,
        y_steps: usize,
    ) -> Result<Self> {
        if x_steps < 2 || y_steps < 2 {
            return Err(Error::InvalidParameter("grid needs at least 2 steps per axis".into()));
        }
        if !(half_width >= 0.0 && half_height >= 0.0 && half_width.is_finite() && half_height.is_finite()) {
            return Err(Error::InvalidParameter("grid extents must be finite and nonnegative".into()));
        }
        Ok(Grid::Rect {
            center,
            half_width,
            half_height,
            x_steps,
            y_steps,
        })
    }

    pub fn disc(center: Complex64, radius: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidParameter("grid needs at least 2 steps per axis".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("disc radius {radius} must be positive and finite")));
        }
        Ok(Grid::Polar {
            center,
            radius,
            radial_steps: steps,
            angular_steps: steps,
        })
    }

    pub fn len(&self) -> usize {
        match *self {
            Grid::Rect { x_steps, y_steps, .. } => x_steps * y_steps,
            Grid::Polar {
                radial_steps,
                angular_steps,
                ..
            } => radial_steps * angular_steps,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<Complex64> {
        match *self {
            Grid::Rect {
                center,
                half_width,
                half_height,
                x_steps,
                y_steps,
            } => {
                let xs = linspace(center.re - half_width, center.re + half_width, x_steps);
                let ys = linspace(center.im - half_height, center.im + half_height, y_steps);
                ys.iter()
                    .flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y)))
                    .collect()
            }
            Grid::Polar {
                center,
                radius,
                radial_steps,
                angular_steps,
            } => (1..=radial_steps)
                .flat_map(|k| {
                    let r = radius * k as f64 / radial_steps as f64;
                    (0..angular_steps).map(move |j| {
                        let theta = std::f64::consts::TAU * j as f64 / angular_steps as f64;
                        center + Complex64::from_polar(r, theta)
                    })
                })
                .collect(),
        }
    }
}

/// `n` equispaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|k| {
                if k == n - 1 {
                    b
                } else {
                    a + (b - a) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}
