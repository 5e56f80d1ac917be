//! Integer-supported distributions, moments, step CDFs and the Kolmogorov
//! distance to the standard normal law.

use serde::{Deserialize, Serialize};

use crate::normal::normal_cdf;
use crate::sum::{compensated_sum, CompensatedSum};
use crate::{Error, Result};

/// Weights below this at either end of the support are dropped.
pub const TRIM_THRESHOLD: f64 = 1e-300;
/// Largest tolerated total of trimmed mass, and of `|Σ p − 1|`.
pub const MASS_TOLERANCE: f64 = 1e-12;
/// Below this standard deviation the distribution counts as a point mass.
pub const MIN_SIGMA: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Form {
    Raw,
    BernoulliProduct { ps: Vec<f64> },
}

/// A probability mass function on `offset, offset + 1, …`.
///
/// Weights are trimmed so that the first and last are strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeDist {
    offset: i64,
    weights: Vec<f64>,
    form: Form,
    mass_defect: f64,
}

impl LatticeDist {
    /// Build from raw weights, where weight `j` is `P(X = offset + j)`.
    pub fn from_weights(offset: i64, weights: Vec<f64>) -> Result<Self> {
        let (offset, weights, defect) = validate_and_trim(offset, weights)?;
        Ok(Self {
            offset,
            weights,
            form: Form::Raw,
            mass_defect: defect,
        })
    }

    /// Sum of independent Bernoulli(pᵢ) variables (a Poisson-binomial law).
    pub fn bernoulli_product(ps: Vec<f64>) -> Result<Self> {
        if ps.is_empty() {
            return Err(Error::InvalidDistribution(
                "bernoulli_ps must not be empty".into(),
            ));
        }
        if let Some(p) = ps.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
            return Err(Error::InvalidDistribution(format!(
                "success probability {p} is not in (0, 1)"
            )));
        }
        let weights = expand_bernoulli(&ps);
        let (offset, weights, defect) = validate_and_trim(0, weights)?;
        Ok(Self {
            offset,
            weights,
            form: Form::BernoulliProduct { ps },
            mass_defect: defect,
        })
    }

    pub fn binomial(n: usize, p: f64) -> Result<Self> {
        Self::bernoulli_product(vec![p; n])
    }

    /// The same law with the product structure forgotten.
    pub fn to_raw(&self) -> Self {
        Self {
            form: Form::Raw,
            ..self.clone()
        }
    }

    /// Translate the support by `shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        Self {
            offset: self.offset + shift,
            form: Form::Raw,
            ..self.clone()
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    /// Success probabilities when the law is stored as a Bernoulli product.
    pub fn bernoulli_ps(&self) -> Option<&[f64]> {
        match &self.form {
            Form::BernoulliProduct { ps } => Some(ps),
            Form::Raw => None,
        }
    }

    /// Mass removed by trimming negligible end weights.
    pub fn mass_defect(&self) -> f64 {
        self.mass_defect
    }

    /// Number of lattice points spanned by the support.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `(support point, weight)` pairs, including interior zeros.
    pub fn atoms(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(move |(j, &w)| (self.offset + j as i64, w))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.weights.len();
        (0..n / 2).all(|j| (self.weights[j] - self.weights[n - 1 - j]).abs() <= tol)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: DistFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidDistribution(format!("bad JSON input: {e}")))?;
        match file {
            DistFile::Weights { offset, weights } => Self::from_weights(offset, weights),
            DistFile::Bernoulli { bernoulli_ps } => Self::bernoulli_product(bernoulli_ps),
        }
    }

    pub fn to_json_string(&self) -> String {
        let value = match &self.form {
            Form::BernoulliProduct { ps } => serde_json::json!({ "bernoulli_ps": ps }),
            Form::Raw => serde_json::json!({ "offset": self.offset, "weights": self.weights }),
        };
        value.to_string()
    }
}

/// On-disk distribution format.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum DistFile {
    Weights {
        offset: i64,
        weights: Vec<f64>,
    },
    Bernoulli {
        bernoulli_ps: Vec<f64>,
    },
}

fn expand_bernoulli(ps: &[f64]) -> Vec<f64> {
    let mut w = Vec::with_capacity(ps.len() + 1);
    w.push(1.0);
    for &p in ps {
        let q = 1.0 - p;
        w.push(0.0);
        for k in (0..w.len()).rev() {
            let prev = if k > 0 { w[k - 1] } else { 0.0 };
            w[k] = w[k] * q + prev * p;
        }
    }
    w
}

fn validate_and_trim(offset: i64, weights: Vec<f64>) -> Result<(i64, Vec<f64>, f64)> {
    if weights.is_empty() {
        return Err(Error::InvalidDistribution("weights must not be empty".into()));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::InvalidDistribution(format!(
            "weight {w} is negative or not finite"
        )));
    }
    let total = compensated_sum(weights.iter().copied());
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "weights sum to {total}, not 1"
        )));
    }
    let first = weights.iter().position(|&w| w >= TRIM_THRESHOLD);
    let last = weights.iter().rposition(|&w| w >= TRIM_THRESHOLD);
    let (first, last) = match (first, last) {
        (Some(f), Some(l)) => (f, l),
        _ => {
            return Err(Error::InvalidDistribution(
                "no weight above the trimming threshold".into(),
            ))
        }
    };
    let defect = compensated_sum(
        weights[..first]
            .iter()
            .chain(&weights[last + 1..])
            .copied(),
    );
    if defect > MASS_TOLERANCE {
        return Err(Error::InvalidDistribution(format!(
            "trimming removed mass {defect:e}"
        )));
    }
    let trimmed = weights[first..=last].to_vec();
    Ok((offset + first as i64, trimmed, defect))
}

/// Mean and standard deviation of a lattice law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Standardization {
    pub mu: f64,
    pub sigma: f64,
}

impl Standardization {
    /// Location of `x` on the standardized scale `(x − μ)/σ`.
    pub fn standardize(&self, x: f64) -> f64 {
        (x - self.mu) / self.sigma
    }
}

/// Mean and standard deviation, accumulated with compensated sums relative to
/// the offset so large offsets cost no precision.
pub fn moments(dist: &LatticeDist) -> Result<Standardization> {
    let local_mean = local_mean(dist);
    let var = compensated_sum(dist.weights.iter().enumerate().map(|(j, &p)| {
        let d = j as f64 - local_mean;
        d * d * p
    }));
    let sigma = var.max(0.0).sqrt();
    if sigma < MIN_SIGMA {
        return Err(Error::DegenerateDistribution { sigma });
    }
    Ok(Standardization {
        mu: dist.offset as f64 + local_mean,
        sigma,
    })
}

/// Mean measured from the first support point.
fn local_mean(dist: &LatticeDist) -> f64 {
    compensated_sum(
        dist.weights
            .iter()
            .enumerate()
            .map(|(j, &p)| j as f64 * p),
    )
}

/// `P(X ≤ t)` together with the left limit `P(X < t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    pub value: f64,
    pub left_limit: f64,
}

pub fn cdf(dist: &LatticeDist, t: f64) -> CdfValue {
    let rel = t - dist.offset as f64;
    if rel.is_nan() {
        return CdfValue {
            value: f64::NAN,
            left_limit: f64::NAN,
        };
    }
    if rel < 0.0 {
        return CdfValue {
            value: 0.0,
            left_limit: 0.0,
        };
    }
    let n = dist.weights.len();
    let floor = rel.floor();
    let last = (floor as usize).min(n - 1);
    let mut acc = CompensatedSum::new();
    for &w in &dist.weights[..last] {
        acc.add(w);
    }
    let below_last = acc.value();
    acc.add(dist.weights[last]);
    let value = acc.value().clamp(0.0, 1.0);
    let on_atom = floor == rel && (floor as usize) < n;
    let left_limit = if on_atom {
        below_last.clamp(0.0, 1.0)
    } else {
        value
    };
    CdfValue { value, left_limit }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    LeftLimit,
    RightValue,
}

/// `sup_t |F_{X*}(t) − Φ(t)|` and where it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KolmogorovReport {
    pub distance: f64,
    /// Standardized location of the maximizing atom.
    pub argmax_point: f64,
    pub side: Side,
}

/// Exact Kolmogorov distance between the standardized law and `N(0, 1)`.
///
/// `F_{X*}` is a step function and `Φ` is continuous and increasing, so the
/// supremum is attained at an atom, on one side or the other of its jump.
pub fn kolmogorov_to_normal(dist: &LatticeDist, std: &Standardization) -> Result<KolmogorovReport> {
    scan_atoms(dist, std.mu - dist.offset as f64, std.sigma)
}

/// Both one-sided deviations at every atom, with the mean given relative to
/// the offset.
fn scan_atoms(dist: &LatticeDist, local_mu: f64, sigma: f64) -> Result<KolmogorovReport> {
    if !(sigma >= MIN_SIGMA) {
        return Err(Error::DegenerateDistribution { sigma });
    }
    let mut cum = CompensatedSum::new();
    let mut best = KolmogorovReport {
        distance: 0.0,
        argmax_point: 0.0,
        side: Side::RightValue,
    };
    let mut first = true;
    for (j, &w) in dist.weights.iter().enumerate() {
        let left = cum.value().clamp(0.0, 1.0);
        cum.add(w);
        if w == 0.0 {
            continue;
        }
        let value = cum.value().clamp(0.0, 1.0);
        let t = (j as f64 - local_mu) / sigma;
        let phi = normal_cdf(t);
        for (dev, side) in [
            ((left - phi).abs(), Side::LeftLimit),
            ((value - phi).abs(), Side::RightValue),
        ] {
            if first || dev > best.distance {
                best = KolmogorovReport {
                    distance: dev,
                    argmax_point: t,
                    side,
                };
                first = false;
            }
        }
    }
    Ok(best)
}

/// Convenience wrapper computing the moments first. Atoms are located
/// relative to the offset, so the result is exactly invariant under shifts.
pub fn kolmogorov_distance(dist: &LatticeDist) -> Result<KolmogorovReport> {
    let std = moments(dist)?;
    scan_atoms(dist, local_mean(dist), std.sigma)
}
