//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Runs on a single worker thread so the
//! timing criterion reflects single-threaded cost.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ridgelab::berry_esseen::{be_bound, theorem2_chain};
use ridgelab::charfn::{check_ridge, CharFn};
use ridgelab::dist::{kolmogorov_distance, LatticeDist};
use ridgelab::family::{random_lattice, random_poisson_binomial, seeded};
use ridgelab::grid::Grid;
use ridgelab::poisson_square::{c2_estimate, harmonic_measure, SquareGrid};
use ridgelab::theorem1::{default_lemma1_ys, lemma1_check, residual, theorem1_verify, DEFAULT_GRID_STEPS};
use ridgelab::zero_strip::{pgf_roots, strip_report, zero_free_delta};
use ridgelab::Complex64;
use rand::Rng;

// Criterion 1
const NORMAL_SUP_RATIO_MAX: f64 = 1e-10;
const NORMAL_INTEGRAL_MAX: f64 = 1e-10;
const NORMAL_DELTA_CAP: f64 = 10.0;
const NORMAL_T: f64 = 10.0;
const CRIT1_TIME: Duration = Duration::from_secs(5);
// Criterion 2
const STRIP_NS: [usize; 4] = [4, 16, 64, 256];
const DELTA_TOL_FACTORED: f64 = 1e-8;
const DELTA_TOL_RAW: f64 = 1e-7;
const RAW_MAX_N: usize = 64;
const SIGMA_TOL: f64 = 1e-8;
// Criterion 3
const K_BERNOULLI: f64 = 0.341345;
const K_BERNOULLI_TOL: f64 = 1e-5;
const K_SQRT_N_RANGE: (f64, f64) = (0.35, 0.45);
const SWEEP_NS: [usize; 3] = [16, 64, 256];
// Criterion 4
const CBE: f64 = 3.0463;
const SMOOTHING_TS: [f64; 4] = [1.0, 2.0, 5.0, 10.0];
const RANDOM_INSTANCES: usize = 20;
const RANDOM_MAX_N: usize = 64;
const P_RANGE: (f64, f64) = (0.2, 0.8);
const SEED: u64 = 20240601;
// Criterion 5
const C1_MAX: f64 = 2.0;
const C1_GROWTH_MAX: f64 = 1.10;
// Criterion 6
const SUP_RATIO_MAX: f64 = 10.0;
const SUP_RATIO_STEP_FACTOR: f64 = 3.0;
// Criterion 7
const LEMMA1_MARGIN_MAX: f64 = 1e-8;
const SKELLAM_DELTA_CAP: f64 = 3.0;
const LEMMA1_X_STEPS: usize = 200;
// Criterion 8
const RIDGE_TOL: f64 = 1e-10;
const RIDGE_HALF: f64 = 5.0;
const RIDGE_STEPS: usize = 50;
const RIDGE_INSTANCES: usize = 50;
// Criterion 9
const SKELLAM_TOL: f64 = 1e-9;
// Criterion 10
const C2_H: f64 = 1.0 / 64.0;
const C2_H_FINE: f64 = 1.0 / 128.0;
const C2_ARCS: usize = 16;
const C2_REL_AGREEMENT: f64 = 0.05;
const PARTITION_TOL: f64 = 1e-3;
const PARTITION_PROBES: [(f64, f64); 5] = [(1.0, 0.0), (0.25, 0.5), (1.75, -0.75), (0.5, -0.25), (1.5, 0.875)];
const CRIT10_TIME: Duration = Duration::from_secs(60);
// Criterion 11
const SUITE_TIME: Duration = Duration::from_secs(600);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn failed(err: impl std::fmt::Display) -> Outcome {
    outcome(false, format!("error: {err}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t1 = match theorem1_verify(&CharFn::Normal, NORMAL_DELTA_CAP, DEFAULT_GRID_STEPS) {
        Ok(r) => r,
        Err(e) => return failed(e),
    };
    let be = match be_bound(&CharFn::Normal, NORMAL_T, CBE) {
        Ok(b) => b,
        Err(e) => return failed(e),
    };
    let elapsed = start.elapsed();
    outcome(
        t1.sup_ratio <= NORMAL_SUP_RATIO_MAX && be.integral <= NORMAL_INTEGRAL_MAX && elapsed < CRIT1_TIME,
        format!("sup_ratio={:.3e} integral={:.3e} time={elapsed:.2?}", t1.sup_ratio, be.integral),
    )
}

fn criterion_2() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for n in STRIP_NS {
        let dist = LatticeDist::binomial(n, 0.5).unwrap();
        let strip = match strip_report(&dist) {
            Ok(s) => s,
            Err(e) => return failed(e),
        };
        let sigma = (n as f64).sqrt() / 2.0;
        let mut ok = (strip.delta - PI).abs() <= DELTA_TOL_FACTORED
            && (strip.sigma - sigma).abs() <= SIGMA_TOL
            && (strip.big_delta - PI * sigma).abs() <= SIGMA_TOL;
        let mut note = format!("n={n}: |δ−π|={:.1e}", (strip.delta - PI).abs());
        if n <= RAW_MAX_N {
            match pgf_roots(&dist.to_raw()) {
                Ok(rs) => {
                    let err = (zero_free_delta(&rs) - PI).abs();
                    ok &= err <= DELTA_TOL_RAW;
                    note.push_str(&format!(" raw |δ−π|={err:.1e}"));
                }
                Err(e) => {
                    ok = false;
                    note.push_str(&format!(" raw error: {e}"));
                }
            }
        }
        pass &= ok;
        notes.push(note);
    }
    outcome(pass, notes.join("; "))
}

fn criterion_3() -> Outcome {
    let bern = LatticeDist::from_weights(0, vec![0.5, 0.5]).unwrap();
    let kb = kolmogorov_distance(&bern).unwrap().distance;
    let mut pass = (kb - K_BERNOULLI).abs() <= K_BERNOULLI_TOL;
    let mut notes = vec![format!("K(Bernoulli)={kb:.6}")];
    for n in SWEEP_NS {
        let k = kolmogorov_distance(&LatticeDist::binomial(n, 0.5).unwrap()).unwrap().distance;
        let scaled = k * (n as f64).sqrt();
        pass &= (K_SQRT_N_RANGE.0..=K_SQRT_N_RANGE.1).contains(&scaled);
        notes.push(format!("n={n}: K√n={scaled:.5}"));
    }
    outcome(pass, notes.join("; "))
}

fn random_poisson_binomials() -> Vec<LatticeDist> {
    let mut rng = seeded(SEED);
    (0..RANDOM_INSTANCES)
        .map(|_| {
            let n = rng.gen_range(1..=RANDOM_MAX_N);
            random_poisson_binomial(&mut rng, n, P_RANGE.0, P_RANGE.1).unwrap()
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let mut laws: Vec<LatticeDist> = STRIP_NS.iter().map(|&n| LatticeDist::binomial(n, 0.5).unwrap()).collect();
    laws.extend(random_poisson_binomials());
    let mut min_slack = f64::INFINITY;
    let mut checks = 0;
    for dist in &laws {
        let k = kolmogorov_distance(dist).unwrap().distance;
        let cf = CharFn::standardized(dist).unwrap();
        for t in SMOOTHING_TS {
            match be_bound(&cf, t, CBE) {
                Ok(b) => {
                    min_slack = min_slack.min(b.rhs - k);
                    checks += 1;
                }
                Err(e) => return failed(e),
            }
        }
    }
    outcome(min_slack >= 0.0, format!("{checks} checks, min(rhs − K)={min_slack:.4e}"))
}

fn sweep_sup_ratios() -> Result<Vec<f64>, ridgelab::Error> {
    SWEEP_NS
        .iter()
        .map(|&n| {
            let dist = LatticeDist::binomial(n, 0.5)?;
            let strip = strip_report(&dist)?;
            let cf = CharFn::standardized(&dist)?;
            Ok(theorem1_verify(&cf, strip.big_delta, DEFAULT_GRID_STEPS)?.sup_ratio)
        })
        .collect()
}

fn criterion_5(sup_ratios: &[f64]) -> Outcome {
    let mut c1 = Vec::new();
    for (&n, &sup) in SWEEP_NS.iter().zip(sup_ratios) {
        match theorem2_chain(&LatticeDist::binomial(n, 0.5).unwrap(), sup.max(1.0), CBE) {
            Ok(r) => c1.push(r.c1_hat),
            Err(e) => return failed(e),
        }
    }
    let growth = c1[2] / c1[1];
    outcome(
        c1.iter().all(|&c| c <= C1_MAX) && growth <= C1_GROWTH_MAX,
        format!("c1_hat={c1:.5?} growth(64→256)={growth:.4}"),
    )
}

fn criterion_6(sup_ratios: &[f64]) -> Outcome {
    let bounded = sup_ratios.iter().all(|r| r.is_finite() && *r <= SUP_RATIO_MAX);
    let steady = sup_ratios.windows(2).all(|w| {
        let f = w[1] / w[0];
        f < SUP_RATIO_STEP_FACTOR && f > 1.0 / SUP_RATIO_STEP_FACTOR
    });
    outcome(bounded && steady, format!("sup_ratio(n=16,64,256)={sup_ratios:.5?}"))
}

fn criterion_7() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut skipped = 0;
    let mut cases: Vec<(CharFn, f64)> = vec![
        (CharFn::Normal, NORMAL_DELTA_CAP),
        (CharFn::SkellamHalf, SKELLAM_DELTA_CAP),
    ];
    let mut rng = seeded(SEED + 7);
    for _ in 0..RANDOM_INSTANCES {
        let len = rng.gen_range(2..=12);
        let dist = random_lattice(&mut rng, len).unwrap();
        let strip = match strip_report(&dist) {
            Ok(s) => s,
            Err(e) => return failed(e),
        };
        cases.push((CharFn::standardized(&dist).unwrap(), strip.big_delta));
    }
    for (cf, big_delta) in &cases {
        match lemma1_check(cf, *big_delta, &default_lemma1_ys(*big_delta), LEMMA1_X_STEPS) {
            Ok(c) => {
                worst = worst.max(c.margin);
                skipped += c.skipped;
            }
            Err(e) => return failed(e),
        }
    }
    outcome(
        worst <= LEMMA1_MARGIN_MAX && skipped == 0,
        format!("{} cases, max margin={worst:.3e}, skipped={skipped}", cases.len()),
    )
}

fn criterion_8() -> Outcome {
    let grid = Grid::square(RIDGE_HALF, RIDGE_STEPS).unwrap();
    let mut cfs = vec![CharFn::Normal, CharFn::SkellamHalf];
    let mut rng = seeded(SEED + 8);
    for _ in 0..RIDGE_INSTANCES {
        let len = rng.gen_range(2..=16);
        cfs.push(CharFn::Lattice(random_lattice(&mut rng, len).unwrap()));
    }
    let (mut violations, mut skipped) = (0, 0);
    for cf in &cfs {
        let r = check_ridge(cf, &grid, RIDGE_TOL);
        violations += r.violations.len();
        skipped += r.skipped;
    }
    outcome(
        violations == 0,
        format!("{} functions, violations={violations}, skipped={skipped}", cfs.len()),
    )
}

fn criterion_9() -> Outcome {
    let expected = 3.0f64.cosh() - 1.0 - 4.5;
    match residual(&CharFn::SkellamHalf, Complex64::new(0.0, 3.0)) {
        Ok(r) => outcome((r - expected).abs() <= SKELLAM_TOL, format!("residual(3i)={r:.9}")),
        Err(e) => failed(e),
    }
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let (coarse, fine) = match (c2_estimate(C2_H, C2_ARCS), c2_estimate(C2_H_FINE, C2_ARCS)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return failed(e),
    };
    let rel = (coarse.c2_hat - fine.c2_hat).abs() / fine.c2_hat;
    let grid = SquareGrid::new(C2_H).unwrap();
    let parts = grid.full_partition(C2_ARCS).unwrap();
    let mut totals = [0.0; PARTITION_PROBES.len()];
    for arc in &parts {
        let omega = match harmonic_measure(std::slice::from_ref(arc), C2_H) {
            Ok(w) => w,
            Err(e) => return failed(e),
        };
        for (total, &(x, y)) in totals.iter_mut().zip(&PARTITION_PROBES) {
            *total += omega.at_point(x, y);
        }
    }
    let partition_err = totals.iter().map(|t| (t - 1.0).abs()).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    outcome(
        coarse.c2_hat > 0.0 && rel <= C2_REL_AGREEMENT && partition_err <= PARTITION_TOL && elapsed < CRIT10_TIME,
        format!(
            "c2_hat(1/64)={:.6} c2_hat(1/128)={:.6} rel={rel:.4} partition_err={partition_err:.1e} time={elapsed:.2?}",
            coarse.c2_hat, fine.c2_hat
        ),
    )
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    rayon::ThreadPoolBuilder::new().num_threads(1).build_global().ok();
    let suite = Instant::now();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut report = |id: u32, name: &'static str, o: Outcome| {
        println!("criterion {id:>2} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((id, name, o));
    };
    report(1, "normal exactness anchor", criterion_1());
    report(2, "zero-free strip of binomials", criterion_2());
    report(3, "Kolmogorov distances", criterion_3());
    report(4, "smoothing inequality", criterion_4());
    let sup_ratios = sweep_sup_ratios();
    match &sup_ratios {
        Ok(s) => {
            report(5, "c1_hat trend", criterion_5(s));
            report(6, "sup_ratio trend", criterion_6(s));
        }
        Err(e) => {
            report(5, "c1_hat trend", failed(e));
            report(6, "sup_ratio trend", failed(e));
        }
    }
    report(7, "monotonicity in x", criterion_7());
    report(8, "ridge property", criterion_8());
    report(9, "critical-growth example", criterion_9());
    report(10, "square kernel constant", criterion_10());
    let total = suite.elapsed();
    report(11, "suite runtime", outcome(total < SUITE_TIME, format!("total={total:.2?}")));
    let failures = results.iter().filter(|r| !r.2.pass).count();
    println!("acceptance: {} passed, {failures} failed", results.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
