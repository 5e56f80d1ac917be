use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("degenerate distribution: standard deviation {sigma:e} is below 1e-14")]
    DegenerateDistribution { sigma: f64 },

    #[error("|f(z)| is too close to zero at z = {re} + {im}i for a reliable log-modulus")]
    EvaluationNearZero { re: f64, im: f64 },

    #[error("root finding did not converge (worst residual {residual:e})")]
    RootFindingDiverged { residual: f64 },

    #[error("polynomial degree {degree} exceeds the raw-form cap of {cap}; use the bernoulli product form")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("zero-free strip too narrow: Δ = {delta} does not exceed c0_eff = {c0_eff}")]
    StripTooNarrow { delta: f64, c0_eff: f64 },

    #[error("characteristic function is not normalized: {0}")]
    NotNormalized(String),

    #[error("Δ is infinite for this entry; pass an explicit cap")]
    InfiniteDelta,

    #[error("quadrature did not reach tolerance {tolerance:e} (error estimate {estimate:e}) within {budget} subintervals")]
    QuadratureNotConverged { tolerance: f64, estimate: f64, budget: usize },

    #[error("laplace solver did not converge: residual {residual:e} after {iterations} sweeps")]
    SolverNotConverged { residual: f64, iterations: usize },

    #[error("arc lies on the open left edge (-i, i), which the kernel bound excludes")]
    ArcExcluded,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
