//! Quantitative normal approximation for lattice laws with zero-free
//! characteristic functions.
//!
//! Given a lattice random variable whose characteristic function is entire and
//! zero-free in a vertical strip `|Re z| < δ`, this crate computes every
//! quantity in the bound chain that links the width of the zero-free strip to
//! the Kolmogorov distance from the standard normal law:
//!
//! * [`dist`] holds lattice distributions, their moments, exact step CDFs and
//!   the Kolmogorov distance to `N(0, 1)`;
//! * [`charfn`] evaluates characteristic functions in the log domain and checks
//!   the ridge property;
//! * [`zero_strip`] finds the zeros of the generating polynomial and turns them
//!   into δ and `Δ = δσ`;
//! * [`theorem1`] measures the residual `u(z) + Re(z²/2)` on `|z| ≤ Δ/3` and
//!   monotonicity of `u` in `x` on `[0, Δ/2]`;
//! * [`berry_esseen`] evaluates the smoothing inequality and assembles the
//!   full chain with an empirical `c₁`;
//! * [`poisson_square`] estimates the boundary derivative of the Poisson kernel
//!   of the square `(0,2)×(−1,1)` through discrete harmonic measure.
//!
//! The `ridgelab` binary wraps these in a small command-line tool, and the
//! `examples/` directory has one runnable program per capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod berry_esseen;
pub mod charfn;
pub mod dist;
mod error;
pub mod family;
pub mod grid;
pub mod normal;
pub mod poisson_square;
pub mod quadrature;
pub mod report;
mod sum;
pub mod theorem1;
pub mod zero_strip;

pub use error::{Error, Result};
pub use num_complex::Complex64;
