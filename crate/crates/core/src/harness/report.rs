use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::runner::ScalingReport;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Svg,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "svg" | "svg-plot" => Ok(Self::Svg),
            other => Err(Error::Parameter(format!("unknown report format `{other}`"))),
        }
    }
}

impl ReportFormat {
    /// Format implied by a file extension.
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        ext.parse()
    }
}

pub fn render(report: &ScalingReport, format: ReportFormat) -> Result<String> {
    Ok(match format {
        ReportFormat::Json => serde_json::to_string_pretty(report)? + "\n",
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Svg => render_svg(report),
    })
}

/// Writes the report; parent directories must exist.
pub fn emit_report(report: &ScalingReport, format: ReportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render(report, format)?)?;
    Ok(())
}

pub fn render_csv(report: &ScalingReport) -> String {
    let mut out = String::from("n,value,stderr\n");
    for p in &report.points {
        let _ = writeln!(out, "{},{},{}", p.n, p.value, p.stderr);
    }
    out
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Log-log plot: one point series, the fitted line and a reference line of
/// the expected slope through the centroid. Axes are drawn as paths so the
/// document holds exactly two `<line>` elements.
pub fn render_svg(report: &ScalingReport) -> String {
    let xs: Vec<f64> = report.points.iter().map(|p| (p.n as f64).ln()).collect();
    let ys: Vec<f64> = report.points.iter().map(|p| p.value.max(f64::MIN_POSITIVE).ln()).collect();
    let (x0, x1) = span(&xs);
    let k = xs.len().max(1) as f64;
    let (cx, cy) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let fit_at = |x: f64| report.intercept + report.fitted_slope * x;
    let ref_at = |x: f64| cy + report.expected * (x - cx);
    let mut all_y = ys.clone();
    all_y.extend([fit_at(x0), fit_at(x1), ref_at(x0), ref_at(x1)]);
    let (y0, y1) = span(&all_y);
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<title>{} log-log profile</title>"#, report.claim_id);
    let _ = writeln!(
        s,
        r#"<path class="axes" d="M {m} {t} L {m} {b} L {r} {b}" fill="none" stroke="black"/>"#,
        m = MARGIN,
        t = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">ln n</text>"#, W / 2.0, H - 20.0);
    let _ = writeln!(
        s,
        r#"<text x="20" y="{}" transform="rotate(-90 20 {})" text-anchor="middle">ln value</text>"#,
        H / 2.0,
        H / 2.0
    );
    let _ = writeln!(
        s,
        r#"<line class="fit" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="steelblue" stroke-width="2"/>"#,
        sx(x0),
        sy(fit_at(x0)),
        sx(x1),
        sy(fit_at(x1))
    );
    let _ = writeln!(
        s,
        r#"<line class="reference" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="gray" stroke-dasharray="6 4"/>"#,
        sx(x0),
        sy(ref_at(x0)),
        sx(x1),
        sy(ref_at(x1))
    );
    let _ = writeln!(s, r#"<g class="points" fill="darkred">"#);
    for (x, y) in xs.iter().zip(&ys) {
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="4"/>"#, sx(*x), sy(*y));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}">slope {:.4} (expected {:.4})</text>"#,
        MARGIN + 10.0,
        MARGIN - 20.0,
        report.fitted_slope,
        report.expected
    );
    s.push_str("</svg>\n");
    s
}

/// `(min, max)` widened slightly; a degenerate range becomes a unit window.
fn span(v: &[f64]) -> (f64, f64) {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return (lo - 0.5, lo + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_checked, ExperimentConfig};

    fn sample() -> ScalingReport {
        run_checked(&ExperimentConfig::for_claim("littlegt_gap").unwrap()).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let text = render(&r, ReportFormat::Json).unwrap();
        let back: ScalingReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_columns() {
        let csv = render_csv(&sample());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,value,stderr"));
        assert_eq!(lines.count(), 5);
    }

    #[test]
    fn svg_structure() {
        let svg = render_svg(&sample());
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches(r#"<g class="points""#).count(), 1);
        assert_eq!(svg.matches("<circle").count(), 5);
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let err = emit_report(&sample(), ReportFormat::Json, Path::new("/nonexistent-dir/x/report.json")).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
    }

    #[test]
    fn formats_from_names() {
        assert_eq!("svg-plot".parse::<ReportFormat>().unwrap(), ReportFormat::Svg);
        assert_eq!(ReportFormat::from_path(Path::new("a/b.csv")).unwrap(), ReportFormat::Csv);
        assert!(ReportFormat::from_path(Path::new("a/b.txt")).is_err());
    }
}
