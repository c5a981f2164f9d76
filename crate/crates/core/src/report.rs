//! Result persistence: deterministic CSV, the JSON run summary, and
//! hand-rolled SVG log-log plots (direct path emission, no plotting
//! dependency).

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::evolve::SupRow;
use crate::fitting::LinearFit;
use crate::Result;

/// Fixed-format float used in every CSV cell: full precision, deterministic
/// across platforms and thread counts.
pub fn format_float(v: f64) -> String {
    format!("{v:.17e}")
}

/// Renders a CSV document; rows are written in the given order, so output
/// bytes depend only on the values.
pub fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub const SUP_HEADER: [&str; 7] =
    ["t", "j", "sup", "argmax_r", "argmax_s", "quad_err", "tail_bound"];

pub fn sup_rows(rows: &[SupRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                format_float(r.t),
                r.j.to_string(),
                format_float(r.sup),
                format_float(r.argmax_r),
                format_float(r.argmax_s),
                format_float(r.quad_err),
                format_float(r.tail_bound),
            ]
        })
        .collect()
}

/// Outcome of one named acceptance check.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub criterion: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(criterion: &str, pass: bool, detail: String) -> Self {
        Verdict { criterion: criterion.to_string(), pass, detail }
    }
}

/// Top-level JSON summary of a run.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub command: String,
    pub verdicts: Vec<Verdict>,
    pub fits: Vec<NamedFit>,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedFit {
    pub name: String,
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    pub slope_half_width: f64,
}

impl NamedFit {
    pub fn new(name: &str, fit: &LinearFit) -> Self {
        NamedFit {
            name: name.to_string(),
            slope: fit.slope,
            intercept: fit.intercept,
            residual_rms: fit.residual_rms,
            slope_half_width: fit.slope_half_width,
        }
    }
}

impl Summary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serialization cannot fail")
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// Log-log scatter plot with an optional fitted line and slope annotation.
/// `points` are (x, y) already in natural-log coordinates.
pub fn svg_loglog(
    title: &str,
    x_label: &str,
    y_label: &str,
    points: &[(f64, f64)],
    fit: Option<&LinearFit>,
) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const M: f64 = 60.0;
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        y_lo = y_lo.min(y);
        y_hi = y_hi.max(y);
    }
    if !x_lo.is_finite() {
        x_lo = 0.0;
        x_hi = 1.0;
        y_lo = 0.0;
        y_hi = 1.0;
    }
    let pad = |lo: &mut f64, hi: &mut f64| {
        let span = (*hi - *lo).max(1e-12);
        *lo -= 0.08 * span;
        *hi += 0.08 * span;
    };
    pad(&mut x_lo, &mut x_hi);
    pad(&mut y_lo, &mut y_hi);
    let sx = |x: f64| M + (x - x_lo) / (x_hi - x_lo) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y_lo) / (y_hi - y_lo) * (H - 2.0 * M);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    // axes
    let _ = writeln!(
        svg,
        "<line x1=\"{M}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        H - M,
        W - M,
        H - M
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{M}\" y1=\"{M}\" x2=\"{M}\" y2=\"{}\" stroke=\"black\"/>",
        H - M
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
        W / 2.0,
        H - 14.0,
        x_label
    );
    let _ = writeln!(
        svg,
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 {})\">{}</text>",
        H / 2.0,
        H / 2.0,
        y_label
    );
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"26\" text-anchor=\"middle\" font-size=\"16\">{}</text>",
        W / 2.0,
        title
    );
    // tick labels at the data extremes
    for (x, y, anchor, label) in [
        (sx(x_lo), H - M + 18.0, "start", format!("{x_lo:.2}")),
        (sx(x_hi), H - M + 18.0, "end", format!("{x_hi:.2}")),
    ] {
        let _ = writeln!(
            svg,
            "<text x=\"{x}\" y=\"{y}\" text-anchor=\"{anchor}\" font-size=\"11\">{label}</text>"
        );
    }
    for (y, label) in [(sy(y_lo), format!("{y_lo:.2}")), (sy(y_hi), format!("{y_hi:.2}"))] {
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{label}</text>",
            M - 6.0,
            y + 4.0
        );
    }
    if let Some(fit) = fit {
        let y1 = fit.intercept + fit.slope * x_lo;
        let y2 = fit.intercept + fit.slope * x_hi;
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>",
            sx(x_lo),
            sy(y1),
            sx(x_hi),
            sy(y2)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"46\" text-anchor=\"middle\" font-size=\"13\" fill=\"#c0392b\">slope = {:.4} &#177; {:.4}</text>",
            W / 2.0,
            fit.slope,
            fit.slope_half_width
        );
    }
    for &(x, y) in points {
        let _ = writeln!(
            svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"#2471a3\"/>",
            sx(x),
            sy(y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitting::{ols, AbscissaKind};

    #[test]
    fn csv_is_deterministic() {
        let rows = vec![vec![format_float(1.0 / 3.0), "0".to_string()]];
        let a = render_csv(&["x", "j"], &rows);
        let b = render_csv(&["x", "j"], &rows);
        assert_eq!(a, b);
        assert!(a.starts_with("x,j\n"));
        assert!(a.contains("3.33333333333333315e-1"));
    }

    #[test]
    fn svg_contains_points_and_fit() {
        let points: Vec<(f64, f64)> = (0..8).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
        let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
        let fit = ols(AbscissaKind::LogTime, &xs, &ys, 6).unwrap();
        let svg = svg_loglog("decay", "ln t", "ln sup", &points, Some(&fit));
        assert!(svg.starts_with("<svg"));
        assert!(svg.matches("<circle").count() == 8);
        assert!(svg.contains("slope = -0.5000"));
    }

    #[test]
    fn summary_serializes() {
        let s = Summary {
            command: "decay-fit".into(),
            verdicts: vec![Verdict::new("t-slope", true, "slope -0.49".into())],
            fits: vec![],
            wall_clock_seconds: 1.25,
        };
        let json = s.to_json();
        assert!(json.contains("\"criterion\": \"t-slope\""));
        assert!(s.all_pass());
    }
}
