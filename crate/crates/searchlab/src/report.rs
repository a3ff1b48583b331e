//! Renders benchmark CSV data as standalone SVG line charts: size on a
//! log-scaled x-axis, one polyline per algorithm, one file per scenario.
//!
//! Axes, ticks, and the legend are drawn with `line`/`text` elements so the
//! `polyline` count in a chart always equals the number of algorithms
//! plotted — a cheap structural handle for tests and downstream tooling.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bench::{BenchCell, BenchReport, ScenarioLabel};
use crate::search::Algorithm;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 58.0;

/// Which column drives the y-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    Time,
    Passes,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Time => "time",
            Metric::Passes => "passes",
        }
    }

    fn axis_label(self) -> &'static str {
        match self {
            Metric::Time => "mean time per search (ns)",
            Metric::Passes => "mean passes per search",
        }
    }

    fn value(self, cell: &BenchCell) -> f64 {
        match self {
            Metric::Time => cell.mean_time_ns,
            Metric::Passes => cell.mean_passes,
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown metric `{0}`, expected `time` or `passes`")]
pub struct UnknownMetric(String);

impl std::str::FromStr for Metric {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "time" => Ok(Metric::Time),
            "passes" => Ok(Metric::Passes),
            other => Err(UnknownMetric(other.to_string())),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("no rows to plot for scenario `{scenario}`")]
    NoData { scenario: ScenarioLabel },
}

/// Scenarios present in a report, in their sorted-row order, deduplicated.
pub fn scenarios_in(report: &BenchReport) -> Vec<ScenarioLabel> {
    report
        .cells
        .iter()
        .map(|c| c.scenario)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn color_of(algorithm: Algorithm) -> &'static str {
    match algorithm {
        Algorithm::Linear => "#d62728",
        Algorithm::Binary => "#1f77b4",
        Algorithm::Modified => "#2ca02c",
        Algorithm::ModifiedPaper => "#ff7f0e",
    }
}

fn fmt_tick(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else if v.abs() >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

/// Renders one scenario of a report as a standalone SVG document: n on a
/// log-scaled x-axis, the chosen metric on the y-axis, one polyline per
/// algorithm, point markers, and a legend.
pub fn render_svg(
    report: &BenchReport,
    scenario: ScenarioLabel,
    metric: Metric,
) -> Result<String, ReportError> {
    let mut cells: Vec<&BenchCell> = report
        .cells
        .iter()
        .filter(|c| c.scenario == scenario)
        .collect();
    if cells.is_empty() {
        return Err(ReportError::NoData { scenario });
    }
    cells.sort_by_key(|c| (c.algorithm, c.n));

    let algorithms: Vec<Algorithm> = {
        let mut seen = BTreeSet::new();
        cells.iter().map(|c| c.algorithm).filter(|a| seen.insert(*a)).collect()
    };

    let log_n = |n: usize| (n.max(1) as f64).log10();
    let (mut lo, mut hi) = cells
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| {
            (lo.min(log_n(c.n)), hi.max(log_n(c.n)))
        });
    if hi - lo < 1e-9 {
        // A single size would collapse the axis; pad half a decade each way.
        lo -= 0.5;
        hi += 0.5;
    }
    let y_max = cells.iter().map(|c| metric.value(c)).fold(0.0f64, f64::max).max(1e-9) * 1.05;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |n: usize| MARGIN_LEFT + (log_n(n) - lo) / (hi - lo) * plot_w;
    let sy = |v: f64| MARGIN_TOP + (1.0 - v / y_max) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" font-size="15" text-anchor="middle">{} — {}</text>"#,
        WIDTH / 2.0,
        scenario,
        metric.axis_label()
    );

    // Frame.
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (MARGIN_TOP, HEIGHT - MARGIN_BOTTOM);
    let _ = writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    );

    // X ticks: one per distinct n.
    let sizes: BTreeSet<usize> = cells.iter().map(|c| c.n).collect();
    for &n in &sizes {
        let x = sx(n);
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{y1}" x2="{x}" y2="{}" stroke="black"/><text x="{x}" y="{}" font-size="11" text-anchor="middle">{n}</text>"#,
            y1 + 5.0,
            y1 + 18.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">n (log scale)</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 14.0
    );

    // Y ticks: five even divisions of [0, y_max].
    for k in 0..=4 {
        let v = y_max * f64::from(k) / 4.0;
        let y = sy(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{y}" x2="{x0}" y2="{y}" stroke="black"/><text x="{}" y="{}" font-size="11" text-anchor="end">{}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0,
            fmt_tick(v)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" font-size="12" transform="rotate(-90 16 {})" text-anchor="middle">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        metric.axis_label()
    );

    // One polyline per algorithm, plus point markers.
    for &algorithm in &algorithms {
        let series: Vec<&BenchCell> =
            cells.iter().copied().filter(|c| c.algorithm == algorithm).collect();
        let color = color_of(algorithm);
        let points: Vec<String> = series
            .iter()
            .map(|c| format!("{:.2},{:.2}", sx(c.n), sy(metric.value(c))))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        );
        for c in &series {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                sx(c.n),
                sy(metric.value(c))
            );
        }
    }

    // Legend, top-right inside the frame.
    for (row, &algorithm) in algorithms.iter().enumerate() {
        let y = y0 + 16.0 + 18.0 * row as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"/><text x="{}" y="{}" font-size="12">{}</text>"#,
            x1 - 150.0,
            x1 - 122.0,
            color_of(algorithm),
            x1 - 116.0,
            y + 4.0,
            algorithm
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
