use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ridgelab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ridgelab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    text.lines()
        .map(|line| {
            // names carry commas inside quotes; everything else is plain
            let mut fields = Vec::new();
            let mut cur = String::new();
            let mut quoted = false;
            for ch in line.chars() {
                match ch {
                    '"' => quoted = !quoted,
                    ',' if !quoted => fields.push(std::mem::take(&mut cur)),
                    c => cur.push(c),
                }
            }
            fields.push(cur);
            fields
        })
        .collect()
}

fn column(rows: &[Vec<String>], name: &str) -> Vec<String> {
    let k = rows[0].iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows[1..].iter().map(|r| r[k].clone()).collect()
}

#[test]
fn analyze_reports_the_binomial_strip() {
    let dir = TempDir::new().unwrap();
    let out = ridgelab(&["analyze", "--family", "binomial:n=64;p=0.5"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&dir.path().join("analyze.csv"));
    let delta: f64 = column(&rows, "delta")[0].parse().unwrap();
    let big_delta: f64 = column(&rows, "Delta")[0].parse().unwrap();
    assert!((delta - std::f64::consts::PI).abs() < 1e-10);
    assert!((big_delta - 4.0 * std::f64::consts::PI).abs() < 1e-10);
    assert!(dir.path().join("analyze.json").exists());
}

#[test]
fn normal_catalog_is_exact() {
    let dir = TempDir::new().unwrap();
    let out = ridgelab(&["verify-thm1", "--catalog", "normal", "--delta-cap", "10", "--emit-svg"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("theorem1.csv"));
    assert_eq!(rows[0], ["name", "Delta", "sup_ratio", "cubic_decay_ratio", "lemma1_margin", "grid_steps"]);
    let sup: f64 = column(&rows, "sup_ratio")[0].parse().unwrap();
    assert!(sup <= 1e-10);
    let svg = fs::read_to_string(dir.path().join("theorem1_residual.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("short.json");
    fs::write(&bad, r#"{"offset": 0, "weights": [0.3, 0.3, 0.3]}"#).unwrap();
    let out = ridgelab(&["berry-esseen", "--input", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1, "{stderr}");

    for args in [
        &["verify-thm1", "--catalog", "skellam_half"][..],
        &["analyze", "--catalog", "gamma"],
        &["sweep", "--family", "poisson_binomial:n=8"],
        &["berry-esseen", "--catalog", "normal", "--delta-cap", "3"],
        &["berry-esseen", "--family", "binomial:n=4", "--c0-eff", "-1"],
        &["analyze", "--input", "/does/not/exist.json"],
        &["estimate-c2", "--mesh", "0.05"],
        &["analyze"],
    ] {
        assert_eq!(ridgelab(args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn failed_checks_exit_with_one() {
    let dir = TempDir::new().unwrap();
    // a tiny smoothing constant cannot dominate the distance
    let out = ridgelab(
        &["berry-esseen", "--family", "binomial:n=4;p=0.5", "--c0-eff", "1", "--cbe", "1e-9"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&dir.path().join("berry_esseen.csv"));
    assert_eq!(column(&rows, "satisfied"), ["false"]);
}

#[test]
fn sweeps_are_byte_identical_across_runs_and_thread_counts() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let spec = "poisson_binomial:n=12,24;count=3;seed=9";
    let one = ridgelab(&["sweep", "--family", spec, "--grid-steps", "60", "--jobs", "1", "--emit-svg"], a.path());
    let many = ridgelab(&["sweep", "--family", spec, "--grid-steps", "60", "--jobs", "4", "--emit-svg"], b.path());
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(many.status.code(), Some(0));
    for file in ["berry_esseen.csv", "theorem1.csv", "lemma1.csv", "c1_hat.svg"] {
        let (x, y) = (fs::read(a.path().join(file)).unwrap(), fs::read(b.path().join(file)).unwrap());
        assert_eq!(x, y, "{file} differs");
    }
    let rows = csv_rows(&a.path().join("berry_esseen.csv"));
    assert_eq!(rows.len(), 7);
    assert!(column(&rows, "satisfied").iter().all(|s| s == "true"));
}

#[test]
fn c2_report_has_arc_rows_and_summary() {
    let dir = TempDir::new().unwrap();
    let out = ridgelab(&["estimate-c2", "--mesh", "0.0625", "--arcs", "8"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&dir.path().join("c2.csv"));
    assert_eq!(rows[0], ["arc_id", "side", "midpoint_x", "midpoint_y", "kernel_x_estimate"]);
    assert_eq!(rows.len(), 1 + 24 + 1);
    let last = rows.last().unwrap();
    assert_eq!(last[0], "summary");
    assert!(last[1].contains("arcs_per_side=8"));
    let c2: f64 = last[4].parse().unwrap();
    let min = rows[1..25].iter().map(|r| r[4].parse::<f64>().unwrap()).fold(f64::INFINITY, f64::min);
    assert_eq!(c2, min);
    assert!(c2 > 0.0);
}

#[test]
fn lemma1_accepts_bernoulli_product_files() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("pb.json");
    fs::write(&input, r#"{"bernoulli_ps": [0.3, 0.5, 0.7, 0.45]}"#).unwrap();
    let out = ridgelab(&["verify-lemma1", "--input", input.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&dir.path().join("lemma1.csv"));
    assert_eq!(column(&rows, "name"), ["pb"]);
    assert_eq!(column(&rows, "skipped"), ["0"]);
}
