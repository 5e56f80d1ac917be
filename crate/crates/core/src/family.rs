//! Parametrized families of lattice laws for sweeps, with explicit seeds.
//!
//! Family specs are written `kind:key=value;key=value`, e.g.
//! `binomial:n=16,64,256;p=0.5`, `poisson_binomial:n=32;count=20;lo=0.2;hi=0.8;seed=7`
//! or `uniform:k=2,3,5`.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::LatticeDist;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Binomial {
        ns: Vec<usize>,
        p: f64,
    },
    PoissonBinomial {
        ns: Vec<usize>,
        count: usize,
        lo: f64,
        hi: f64,
        seed: Option<u64>,
    },
    /// Uniform law on `{0, …, k−1}`.
    Uniform {
        ks: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub name: String,
    /// Family size parameter (`n` or `k`).
    pub n: usize,
    pub dist: LatticeDist,
}

impl Family {
    /// Expand into concrete laws. `fallback_seed` is used when the spec has
    /// no `seed=`; random families fail without either.
    pub fn members(&self, fallback_seed: Option<u64>) -> Result<Vec<Member>> {
        match self {
            Family::Binomial { ns, p } => ns
                .iter()
                .map(|&n| {
                    Ok(Member {
                        name: format!("binomial(n={n},p={p})"),
                        n,
                        dist: LatticeDist::binomial(n, *p)?,
                    })
                })
                .collect(),
            Family::PoissonBinomial {
                ns,
                count,
                lo,
                hi,
                seed,
            } => {
                let seed = seed.or(fallback_seed).ok_or_else(|| {
                    Error::InvalidParameter("poisson_binomial families need a seed".into())
                })?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut out = Vec::new();
                for &n in ns {
                    for k in 0..*count {
                        out.push(Member {
                            name: format!("poisson_binomial(n={n},seed={seed},#{k})"),
                            n,
                            dist: random_poisson_binomial(&mut rng, n, *lo, *hi)?,
                        });
                    }
                }
                Ok(out)
            }
            Family::Uniform { ks } => ks
                .iter()
                .map(|&k| {
                    Ok(Member {
                        name: format!("uniform(k={k})"),
                        n: k,
                        dist: LatticeDist::from_weights(0, vec![1.0 / k as f64; k])?,
                    })
                })
                .collect(),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidParameter(format!("family spec `{s}`: {msg}"));
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = BTreeMap::new();
        for pair in rest.split(';').filter(|p| !p.trim().is_empty()) {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got `{pair}`")))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        let list = |key: &str| -> Result<Vec<usize>> {
            let raw = params.get(key).ok_or_else(|| bad(format!("missing `{key}`")))?;
            raw.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| bad(format!("{key}: {e}"))))
                .collect()
        };
        let real = |key: &str, default: f64| -> Result<f64> {
            params
                .get(key)
                .map_or(Ok(default), |v| v.parse::<f64>().map_err(|e| bad(format!("{key}: {e}"))))
        };
        let family = match kind.trim() {
            "binomial" => Family::Binomial {
                ns: list("n")?,
                p: real("p", 0.5)?,
            },
            "poisson_binomial" => Family::PoissonBinomial {
                ns: list("n")?,
                count: params
                    .get("count")
                    .map_or(Ok(1), |v| v.parse().map_err(|e| bad(format!("count: {e}"))))?,
                lo: real("lo", 0.2)?,
                hi: real("hi", 0.8)?,
                seed: params
                    .get("seed")
                    .map(|v| v.parse().map_err(|e| bad(format!("seed: {e}"))))
                    .transpose()?,
            },
            "uniform" => Family::Uniform { ks: list("k")? },
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        match &family {
            Family::Binomial { ns, p } if ns.contains(&0) || !(*p > 0.0 && *p < 1.0) => {
                Err(bad("need n ≥ 1 and p in (0, 1)".into()))
            }
            Family::PoissonBinomial { ns, lo, hi, .. }
                if ns.contains(&0) || !(0.0 < *lo && lo <= hi && *hi < 1.0) =>
            {
                Err(bad("need n ≥ 1 and 0 < lo ≤ hi < 1".into()))
            }
            Family::Uniform { ks } if ks.iter().any(|&k| k < 2) => Err(bad("need k ≥ 2".into())),
            _ => Ok(family),
        }
    }
}

/// Bernoulli product with `n` success probabilities drawn uniformly from
/// `[lo, hi]`.
pub fn random_poisson_binomial<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Result<LatticeDist> {
    let ps = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    LatticeDist::bernoulli_product(ps)
}

/// Raw law on `len` consecutive integers with random positive weights and a
/// random offset in `[−10, 10]`.
pub fn random_lattice<R: Rng>(rng: &mut R, len: usize) -> Result<LatticeDist> {
    let raw: Vec<f64> = (0..len).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let offset = rng.gen_range(-10..=10);
    LatticeDist::from_weights(offset, raw.into_iter().map(|w| w / total).collect())
}

/// Seeded generator used throughout.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
