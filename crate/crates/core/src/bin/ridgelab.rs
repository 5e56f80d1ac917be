//! Command-line front end: load a law (file, family or catalog entry), run one
//! analysis and write CSV/JSON reports, plus SVG plots on request.
//!
//! Exit status is 0 on success, 1 when a checked property fails or a numerical
//! routine gives up, and 2 when the input is unusable.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use ridgelab::berry_esseen::{be_integrand, feller_constant, theorem2_chain, BEReport};
use ridgelab::charfn::CharFn;
use ridgelab::dist::{kolmogorov_distance, moments, LatticeDist};
use ridgelab::family::Family;
use ridgelab::grid::linspace;
use ridgelab::poisson_square::c2_estimate;
use ridgelab::report::{be_table, c2_table, fmt_num, line_plot_svg, theorem1_table, Series, Table};
use ridgelab::theorem1::{default_lemma1_ys, lemma1_check, theorem1_verify, Theorem1Report, DEFAULT_GRID_STEPS};
use ridgelab::zero_strip::strip_report;
use ridgelab::Error;
use serde::Serialize;

/// Largest `u_x` accepted as "decreasing" on `[0, Δ/2]`.
const LEMMA1_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "ridgelab", version, about = "Zero-free strips, Gaussian residual fields and Berry–Esseen chains for lattice laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moments, generating-polynomial roots, δ, Δ and the Kolmogorov distance.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Residual field and Berry–Esseen chain over a family of laws.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        chain: ChainOpts,
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Sup-ratio of `|u(z) + Re(z²/2)|·Δ/|z|³` on `|z| ≤ Δ/3`.
    #[command(name = "verify-thm1")]
    VerifyThm1 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Largest `u_x` over `[0, Δ/2]`; nonpositive means `u` decreases in `x`.
    #[command(name = "verify-lemma1")]
    VerifyLemma1 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Smoothing-inequality bound against the exact Kolmogorov distance.
    #[command(name = "berry-esseen")]
    BerryEsseen {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        chain: ChainOpts,
        #[command(flatten)]
        field: FieldOpts,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Boundary derivative of the Poisson kernel of (0,2)×(−1,1) at 0.
    #[command(name = "estimate-c2")]
    EstimateC2 {
        /// Mesh width; 1/h must be an integer.
        #[arg(long, default_value_t = 1.0 / 64.0, value_parser = positive)]
        mesh: f64,
        /// Arcs per side of the boundary partition.
        #[arg(long, default_value_t = 16)]
        arcs: usize,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Distribution file: {"offset": k, "weights": [...]} or {"bernoulli_ps": [...]}.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Family spec, e.g. `binomial:n=16,64,256;p=0.5`.
    #[arg(long)]
    family: Option<String>,
    /// Closed-form entry: `normal` or `skellam_half`.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct ChainOpts {
    /// Effective residual constant c0; defaults to max(measured sup-ratio, 1).
    #[arg(long = "c0-eff", value_parser = positive)]
    c0_eff: Option<f64>,
    /// Constant of the smoothing inequality.
    #[arg(long, default_value_t = feller_constant(), value_parser = positive)]
    cbe: f64,
}

#[derive(Args)]
struct FieldOpts {
    /// Upper bound on Δ; required for entries without zeros.
    #[arg(long = "delta-cap", value_parser = positive)]
    delta_cap: Option<f64>,
    /// Polar grid resolution (radii and angles).
    #[arg(long = "grid-steps", default_value_t = DEFAULT_GRID_STEPS)]
    grid_steps: usize,
}

#[derive(Args)]
struct RunOpts {
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write SVG plots.
    #[arg(long = "emit-svg")]
    emit_svg: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for random families that do not carry their own.
    #[arg(long)]
    seed: Option<u64>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("{x} is not a positive finite number")),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidDistribution(_)
            | Error::DegenerateDistribution { .. }
            | Error::NotNormalized(_)
            | Error::InfiniteDelta
            | Error::StripTooNarrow { .. }
            | Error::DegreeTooLarge { .. }
            | Error::ArcExcluded
            | Error::InvalidParameter(_) => Failure::Input(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// A named law to analyse.
struct Subject {
    name: String,
    n: usize,
    law: Law,
}

enum Law {
    Lattice(LatticeDist),
    Catalog(CharFn),
}

impl Subject {
    fn charfn(&self) -> Outcome<CharFn> {
        match &self.law {
            Law::Lattice(d) => Ok(CharFn::standardized(d)?),
            Law::Catalog(cf) => Ok(cf.clone()),
        }
    }

    fn lattice(&self) -> Outcome<&LatticeDist> {
        match &self.law {
            Law::Lattice(d) => Ok(d),
            Law::Catalog(_) => Err(Failure::Input(format!("`{}` is not a lattice law", self.name))),
        }
    }

    /// `Δ` of the law, capped by `--delta-cap`.
    fn delta(&self, cap: Option<f64>) -> Outcome<f64> {
        let natural = match &self.law {
            Law::Lattice(d) => strip_report(d)?.big_delta,
            Law::Catalog(_) => f64::INFINITY,
        };
        let delta = cap.map_or(natural, |c| natural.min(c));
        if delta.is_finite() {
            Ok(delta)
        } else {
            Err(Failure::Input(format!("`{}` has Δ = ∞; pass --delta-cap", self.name)))
        }
    }
}

fn load(source: &Source, seed: Option<u64>) -> Outcome<Vec<Subject>> {
    if let Some(path) = &source.input {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let dist = LatticeDist::from_json_str(&text)?;
        let name = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
        return Ok(vec![Subject {
            name,
            n: dist.len() - 1,
            law: Law::Lattice(dist),
        }]);
    }
    if let Some(spec) = &source.family {
        let family: Family = spec.parse()?;
        return Ok(family
            .members(seed)?
            .into_iter()
            .map(|m| Subject {
                name: m.name,
                n: m.n,
                law: Law::Lattice(m.dist),
            })
            .collect());
    }
    let name = source.catalog.as_deref().unwrap_or_default();
    let cf = CharFn::catalog(name).ok_or_else(|| {
        Failure::Input(format!("unknown catalog entry `{name}` (known: {})", CharFn::CATALOG.join(", ")))
    })?;
    Ok(vec![Subject {
        name: name.to_string(),
        n: 0,
        law: Law::Catalog(cf),
    }])
}

fn write(dir: &Path, file: &str, contents: &str) -> Outcome<()> {
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let path = dir.join(file);
    fs::write(&path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize + ?Sized>(dir: &Path, file: &str, value: &T) -> Outcome<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Check(e.to_string()))?;
    write(dir, file, &(text + "\n"))
}

fn par_map<T: Send>(subjects: &[Subject], f: impl Fn(&Subject) -> Outcome<T> + Sync + Send) -> Outcome<Vec<T>> {
    subjects.par_iter().map(f).collect()
}

#[derive(Serialize)]
struct Analysis {
    name: String,
    offset: Option<i64>,
    support_len: Option<usize>,
    mu: f64,
    sigma: f64,
    delta: f64,
    #[serde(rename = "Delta")]
    big_delta: f64,
    nearest_root: Option<[f64; 2]>,
    max_root_residual: Option<f64>,
    #[serde(rename = "K")]
    k: Option<f64>,
    roots: Vec<[f64; 2]>,
}

fn analyze(subjects: &[Subject], run: &RunOpts) -> Outcome<()> {
    let rows = par_map(subjects, |s| match &s.law {
        Law::Lattice(d) => {
            let strip = strip_report(d)?;
            let std = moments(d)?;
            Ok(Analysis {
                name: s.name.clone(),
                offset: Some(d.offset()),
                support_len: Some(d.len()),
                mu: std.mu,
                sigma: strip.sigma,
                delta: strip.delta,
                big_delta: strip.big_delta,
                nearest_root: strip.nearest_root.map(|w| [w.re, w.im]),
                max_root_residual: Some(strip.roots.max_residual()),
                k: Some(kolmogorov_distance(d)?.distance),
                roots: strip.roots.roots.iter().map(|w| [w.re, w.im]).collect(),
            })
        }
        Law::Catalog(_) => Ok(Analysis {
            name: s.name.clone(),
            offset: None,
            support_len: None,
            mu: 0.0,
            sigma: 1.0,
            delta: f64::INFINITY,
            big_delta: f64::INFINITY,
            nearest_root: None,
            max_root_residual: None,
            k: None,
            roots: Vec::new(),
        }),
    })?;
    let mut table = Table::new(&[
        "name", "offset", "support_len", "mu", "sigma", "delta", "Delta", "nearest_root_re", "nearest_root_im",
        "max_root_residual", "K",
    ]);
    let opt = |x: Option<f64>| x.map_or(String::new(), fmt_num);
    for a in &rows {
        table.push(vec![
            a.name.clone(),
            a.offset.map_or(String::new(), |o| o.to_string()),
            a.support_len.map_or(String::new(), |l| l.to_string()),
            fmt_num(a.mu),
            fmt_num(a.sigma),
            fmt_num(a.delta),
            fmt_num(a.big_delta),
            opt(a.nearest_root.map(|w| w[0])),
            opt(a.nearest_root.map(|w| w[1])),
            opt(a.max_root_residual),
            opt(a.k),
        ]);
    }
    write(&run.out, "analyze.csv", &table.to_csv())?;
    write_json(&run.out, "analyze.json", &rows)?;
    Ok(())
}

fn residual_plot(reports: &[(String, Theorem1Report)]) -> String {
    let series: Vec<Series> = reports
        .iter()
        .map(|(name, r)| Series {
            name: name.clone(),
            points: r.radial_profile.clone(),
        })
        .collect();
    line_plot_svg("Residual ratio |u + Re z²/2|·Δ/|z|³", "|z|", "max ratio on circle", &series)
}

fn verify_thm1(subjects: &[Subject], field: &FieldOpts, run: &RunOpts) -> Outcome<Vec<(String, Theorem1Report)>> {
    let reports = par_map(subjects, |s| {
        let delta = s.delta(field.delta_cap)?;
        Ok((s.name.clone(), theorem1_verify(&s.charfn()?, delta, field.grid_steps)?))
    })?;
    let table = theorem1_table(reports.iter().map(|(n, r)| (n.as_str(), r)));
    write(&run.out, "theorem1.csv", &table.to_csv())?;
    write_json(&run.out, "theorem1.json", &reports.iter().map(|(n, r)| (n, r)).collect::<Vec<_>>())?;
    if run.emit_svg {
        write(&run.out, "theorem1_residual.svg", &residual_plot(&reports))?;
    }
    Ok(reports)
}

#[derive(Serialize)]
struct Lemma1Row {
    name: String,
    #[serde(rename = "Delta")]
    big_delta: f64,
    margin: f64,
    argmax: [f64; 2],
    checked: usize,
    skipped: usize,
}

fn verify_lemma1(subjects: &[Subject], field: &FieldOpts, run: &RunOpts) -> Outcome<Vec<Lemma1Row>> {
    let rows = par_map(subjects, |s| {
        let delta = s.delta(field.delta_cap)?;
        let c = lemma1_check(&s.charfn()?, delta, &default_lemma1_ys(delta), field.grid_steps)?;
        Ok(Lemma1Row {
            name: s.name.clone(),
            big_delta: delta,
            margin: c.margin,
            argmax: [c.argmax.re, c.argmax.im],
            checked: c.checked,
            skipped: c.skipped,
        })
    })?;
    let mut table = Table::new(&["name", "Delta", "margin", "argmax_re", "argmax_im", "checked", "skipped"]);
    for r in &rows {
        table.push(vec![
            r.name.clone(),
            fmt_num(r.big_delta),
            fmt_num(r.margin),
            fmt_num(r.argmax[0]),
            fmt_num(r.argmax[1]),
            r.checked.to_string(),
            r.skipped.to_string(),
        ]);
    }
    write(&run.out, "lemma1.csv", &table.to_csv())?;
    write_json(&run.out, "lemma1.json", &rows)?;
    Ok(rows)
}

fn lemma1_verdict(rows: &[Lemma1Row]) -> Outcome<()> {
    match rows.iter().find(|r| r.margin > LEMMA1_TOL || r.skipped > 0) {
        Some(r) => Err(Failure::Check(format!(
            "{}: u_x reaches {:e} at {}{:+}i ({} points skipped)",
            r.name, r.margin, r.argmax[0], r.argmax[1], r.skipped
        ))),
        None => Ok(()),
    }
}

/// `c0_eff` from the flag, or `max(measured sup-ratio, 1)`.
fn chain_for(s: &Subject, chain: &ChainOpts, field: &FieldOpts) -> Outcome<BEReport> {
    let dist = s.lattice()?;
    let c0_eff = match chain.c0_eff {
        Some(c) => c,
        None => {
            let delta = s.delta(field.delta_cap)?;
            theorem1_verify(&s.charfn()?, delta, field.grid_steps)?.sup_ratio.max(1.0)
        }
    };
    Ok(theorem2_chain(dist, c0_eff, chain.cbe)?)
}

fn berry_esseen(
    subjects: &[Subject],
    chain: &ChainOpts,
    field: &FieldOpts,
    run: &RunOpts,
) -> Outcome<Vec<(String, usize, BEReport)>> {
    let reports = par_map(subjects, |s| Ok((s.name.clone(), s.n, chain_for(s, chain, field)?)))?;
    let table = be_table(reports.iter().map(|(name, n, r)| (name.as_str(), *n, r)));
    write(&run.out, "berry_esseen.csv", &table.to_csv())?;
    write_json(&run.out, "berry_esseen.json", &reports)?;
    if run.emit_svg {
        let series = subjects
            .iter()
            .zip(&reports)
            .map(|(s, (name, _, r))| {
                let cf = s.charfn()?;
                Ok(Series {
                    name: name.clone(),
                    points: linspace(-r.t, r.t, 401).into_iter().map(|x| (x, be_integrand(&cf, x))).collect(),
                })
            })
            .collect::<Outcome<Vec<_>>>()?;
        write(
            &run.out,
            "berry_esseen_integrand.svg",
            &line_plot_svg("|f(x) − exp(−x²/2)| / |x|", "x", "integrand", &series),
        )?;
    }
    Ok(reports)
}

fn be_verdict(reports: &[(String, usize, BEReport)]) -> Outcome<()> {
    match reports.iter().find(|(_, _, r)| !r.satisfied) {
        Some((name, _, r)) => Err(Failure::Check(format!(
            "{name}: K = {:e} exceeds the smoothing bound {:e}",
            r.k, r.rhs_bound
        ))),
        None => Ok(()),
    }
}

fn sweep(subjects: &[Subject], chain: &ChainOpts, field: &FieldOpts, run: &RunOpts) -> Outcome<()> {
    let lemma = verify_lemma1(subjects, field, run)?;
    let thm1 = verify_thm1(subjects, field, run)?;
    let c0: Vec<f64> = thm1.iter().map(|(_, r)| r.sup_ratio.max(1.0)).collect();
    let reports: Vec<(String, usize, BEReport)> = subjects
        .par_iter()
        .zip(&c0)
        .map(|(s, &c)| {
            let c0_eff = chain.c0_eff.unwrap_or(c);
            Ok((s.name.clone(), s.n, theorem2_chain(s.lattice()?, c0_eff, chain.cbe)?))
        })
        .collect::<Outcome<_>>()?;
    let table = be_table(reports.iter().map(|(name, n, r)| (name.as_str(), *n, r)));
    write(&run.out, "berry_esseen.csv", &table.to_csv())?;
    write_json(&run.out, "berry_esseen.json", &reports)?;
    if run.emit_svg {
        let points = reports.iter().map(|(_, n, r)| (*n as f64, r.c1_hat)).collect();
        write(
            &run.out,
            "c1_hat.svg",
            &line_plot_svg("c1_hat = K·σ·δ", "n", "c1_hat", &[Series { name: "c1_hat".into(), points }]),
        )?;
    }
    lemma1_verdict(&lemma)?;
    be_verdict(&reports)
}

fn estimate_c2(mesh: f64, arcs: usize, run: &RunOpts) -> Outcome<()> {
    let est = c2_estimate(mesh, arcs)?;
    write(&run.out, "c2.csv", &c2_table(&est).to_csv())?;
    write_json(&run.out, "c2.json", &est)?;
    if est.c2_hat > 0.0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("c2_hat = {:e} is not positive", est.c2_hat)))
    }
}

fn run_opts(command: &Command) -> &RunOpts {
    match command {
        Command::Analyze { run, .. }
        | Command::Sweep { run, .. }
        | Command::VerifyThm1 { run, .. }
        | Command::VerifyLemma1 { run, .. }
        | Command::BerryEsseen { run, .. }
        | Command::EstimateC2 { run, .. } => run,
    }
}

fn dispatch(cli: &Cli) -> Outcome<()> {
    let run = run_opts(&cli.command);
    if let Some(jobs) = run.jobs {
        if jobs == 0 {
            return Err(Failure::Input("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    match &cli.command {
        Command::Analyze { source, run } => analyze(&load(source, run.seed)?, run),
        Command::Sweep { source, chain, field, run } => sweep(&load(source, run.seed)?, chain, field, run),
        Command::VerifyThm1 { source, field, run } => verify_thm1(&load(source, run.seed)?, field, run).map(|_| ()),
        Command::VerifyLemma1 { source, field, run } => {
            lemma1_verdict(&verify_lemma1(&load(source, run.seed)?, field, run)?)
        }
        Command::BerryEsseen { source, chain, field, run } => {
            be_verdict(&berry_esseen(&load(source, run.seed)?, chain, field, run)?)
        }
        Command::EstimateC2 { mesh, arcs, run } => estimate_c2(*mesh, *arcs, run),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("ridgelab: check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("ridgelab: input error: {msg}");
            ExitCode::from(2)
        }
    }
}
