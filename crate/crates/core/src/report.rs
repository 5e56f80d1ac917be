//! Deterministic CSV tables and minimal SVG line plots.

use std::fmt::Write as _;

use crate::berry_esseen::BEReport;
use crate::poisson_square::{KernelEstimate, Side};
use crate::theorem1::Theorem1Report;

/// Twelve significant digits, scientific notation. Negative zero prints as
/// zero.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        "0.00000000000e0".into()
    } else if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.11e}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let fields: Vec<String> = line.iter().map(|f| quote(f)).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub const THEOREM1_COLUMNS: [&str; 6] = ["name", "Delta", "sup_ratio", "cubic_decay_ratio", "lemma1_margin", "grid_steps"];

pub fn theorem1_table<'a>(rows: impl IntoIterator<Item = (&'a str, &'a Theorem1Report)>) -> Table {
    let mut t = Table::new(&THEOREM1_COLUMNS);
    for (name, r) in rows {
        t.push(vec![
            name.to_string(),
            fmt_num(r.delta_used),
            fmt_num(r.sup_ratio),
            fmt_num(r.cubic_decay_ratio),
            fmt_num(r.lemma1_margin),
            r.grid_steps.to_string(),
        ]);
    }
    t
}

pub const BE_COLUMNS: [&str; 12] = [
    "name",
    "n",
    "delta",
    "sigma",
    "Delta",
    "T",
    "a",
    "integral_total",
    "rhs_bound",
    "K",
    "c1_hat",
    "satisfied",
];

pub fn be_table<'a>(rows: impl IntoIterator<Item = (&'a str, usize, &'a BEReport)>) -> Table {
    let mut t = Table::new(&BE_COLUMNS);
    for (name, n, r) in rows {
        t.push(vec![
            name.to_string(),
            n.to_string(),
            fmt_num(r.delta),
            fmt_num(r.sigma),
            fmt_num(r.big_delta),
            fmt_num(r.t),
            fmt_num(r.a),
            fmt_num(r.integral_total),
            fmt_num(r.rhs_bound),
            fmt_num(r.k),
            fmt_num(r.c1_hat),
            r.satisfied.to_string(),
        ]);
    }
    t
}

pub const C2_COLUMNS: [&str; 5] = ["arc_id", "side", "midpoint_x", "midpoint_y", "kernel_x_estimate"];

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
        Side::Bottom => "bottom",
        Side::Top => "top",
    }
}

/// One row per arc, then a `summary` row whose side column records the mesh
/// and partition and whose estimate column is `c2_hat`.
pub fn c2_table(est: &KernelEstimate) -> Table {
    let mut t = Table::new(&C2_COLUMNS);
    for a in &est.arcs {
        t.push(vec![
            a.arc_id.to_string(),
            side_name(a.arc.side).to_string(),
            fmt_num(a.midpoint.0),
            fmt_num(a.midpoint.1),
            fmt_num(a.kernel_x_estimate),
        ]);
    }
    let argmin = &est.arcs[est.argmin];
    t.push(vec![
        "summary".into(),
        format!("h={};arcs_per_side={}", fmt_num(est.h), est.arcs_per_side),
        fmt_num(argmin.midpoint.0),
        fmt_num(argmin.midpoint.1),
        fmt_num(est.c2_hat),
    ]);
    t
}

/// One named polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Line plot with linear axes. Non-finite points are dropped.
pub fn line_plot_svg(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let finite = |p: &&(f64, f64)| p.0.is_finite() && p.1.is_finite();
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().filter(finite).copied()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = all.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    );
    if all.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    for k in 0..=4 {
        let fx = x0 + (x1 - x0) * k as f64 / 4.0;
        let fy = y0 + (y1 - y0) * k as f64 / 4.0;
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, sx(fx), HEIGHT - MARGIN + 16.0, tick(fx));
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, MARGIN - 4.0, sy(fy) + 4.0, tick(fy));
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, WIDTH / 2.0, HEIGHT - 12.0, escape(x_label));
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    );
    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(finite)
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(svg, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" fill="{color}">{}</text>"#,
            WIDTH - MARGIN - 4.0,
            MARGIN + 16.0 * (k + 1) as f64,
            escape(&s.name)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
