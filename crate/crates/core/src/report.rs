//! Experiment reports and their CSV and SVG renderings.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::ResidualSeries;
use crate::error::{Error, Result};
use crate::evaluator::QuadScheme;
use crate::experiment::ExperimentSpec;

/// Significant digits written for every CSV value.
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub scheme: QuadScheme,
    pub quad_order: usize,
    pub series_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    /// The effective specification, defaults included.
    pub spec: ExperimentSpec,
    pub tolerances: Tolerances,
    pub generated_unix_seconds: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub x: f64,
    pub g: f64,
    /// `S_n*(g; x)` for each `n` of the report, in order.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub n: u64,
    pub u: f64,
    pub sup_error: f64,
    pub mean_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub metadata: ReportMetadata,
    pub function: String,
    pub ns: Vec<u64>,
    pub rows: Vec<ReportRow>,
    pub summary: Vec<ErrorSummary>,
    pub series: Vec<ResidualSeries>,
    pub diagnostics: Vec<String>,
}

/// Formats `v` with [`CSV_DIGITS`] significant digits, in positional
/// notation for moderate exponents and scientific notation otherwise.
pub fn format_significant(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", CSV_DIGITS - 1, v);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..CSV_DIGITS as i32).contains(&exp) {
        let decimals = (CSV_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl ExperimentReport {
    pub fn csv_header(&self) -> String {
        let mut header = String::from("x,g");
        for n in &self.ns {
            write!(header, ",S_{n}").unwrap();
        }
        header
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format_significant(row.x));
            out.push(',');
            out.push_str(&format_significant(row.g));
            for v in &row.values {
                out.push(',');
                out.push_str(&format_significant(*v));
            }
            out.push('\n');
        }
        out.push_str("# summary: n,u,sup_error,mean_error\n");
        for s in &self.summary {
            writeln!(
                out,
                "# {},{},{},{}",
                s.n,
                format_significant(s.u),
                format_significant(s.sup_error),
                format_significant(s.mean_error)
            )
            .unwrap();
        }
        for series in &self.series {
            let slope = series.slope.map_or("none".to_string(), format_significant);
            writeln!(out, "# series {}: slope {slope}", series.label).unwrap();
        }
        for d in &self.diagnostics {
            writeln!(out, "# diagnostic: {d}").unwrap();
        }
        let meta = serde_json::to_string(&self.metadata).expect("metadata serializes");
        writeln!(out, "# metadata: {meta}").unwrap();
        out
    }

    pub fn emit_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    /// A standalone SVG line chart of the target and each operator column.
    pub fn to_svg(&self) -> Result<String> {
        if self.rows.len() < 2 {
            return Err(Error::usage("a chart needs at least two rows"));
        }
        const W: f64 = 800.0;
        const H: f64 = 500.0;
        const LEFT: f64 = 70.0;
        const RIGHT: f64 = 170.0;
        const TOP: f64 = 30.0;
        const BOTTOM: f64 = 50.0;
        const PALETTE: [&str; 8] = [
            "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#7f7f7f",
        ];

        let (x_lo, x_hi) = bounds(self.rows.iter().map(|r| r.x));
        let (y_lo, y_hi) = bounds(
            self.rows
                .iter()
                .flat_map(|r| std::iter::once(r.g).chain(r.values.iter().copied())),
        );
        let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (W - LEFT - RIGHT);
        let sy = |y: f64| H - BOTTOM - (y - y_lo) / (y_hi - y_lo) * (H - TOP - BOTTOM);

        let mut svg = String::new();
        writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
        )
        .unwrap();
        writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
        writeln!(
            svg,
            r#"<line x1="{LEFT}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
            H - BOTTOM,
            W - RIGHT,
            H - BOTTOM
        )
        .unwrap();
        writeln!(
            svg,
            r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{}" stroke="black"/>"#,
            H - BOTTOM
        )
        .unwrap();
        for i in 0..=5 {
            let t = i as f64 / 5.0;
            let xv = x_lo + t * (x_hi - x_lo);
            let px = sx(xv);
            writeln!(
                svg,
                r#"<line x1="{px:.2}" y1="{}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
                H - BOTTOM,
                H - BOTTOM + 5.0,
                H - BOTTOM + 20.0,
                tick_label(xv)
            )
            .unwrap();
            let yv = y_lo + t * (y_hi - y_lo);
            let py = sy(yv);
            writeln!(
                svg,
                r#"<line x1="{}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 5.0,
                LEFT - 8.0,
                py + 4.0,
                tick_label(yv)
            )
            .unwrap();
        }
        writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">x</text>"#,
            (LEFT + W - RIGHT) / 2.0,
            H - 10.0
        )
        .unwrap();

        let mut curves: Vec<(String, &str, Vec<f64>)> = vec![(
            escape(&self.function),
            "blue",
            self.rows.iter().map(|r| r.g).collect(),
        )];
        for (k, n) in self.ns.iter().enumerate() {
            curves.push((
                format!("S_{n}"),
                PALETTE[k % PALETTE.len()],
                self.rows.iter().map(|r| r.values[k]).collect(),
            ));
        }
        for (k, (label, color, ys)) in curves.iter().enumerate() {
            let points: Vec<String> = self
                .rows
                .iter()
                .zip(ys)
                .map(|(r, &y)| format!("{:.2},{:.2}", sx(r.x), sy(y)))
                .collect();
            writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                points.join(" ")
            )
            .unwrap();
            let ly = TOP + 20.0 * k as f64;
            writeln!(
                svg,
                r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{label}</text>"#,
                W - RIGHT + 15.0,
                W - RIGHT + 40.0,
                W - RIGHT + 46.0,
                ly + 4.0
            )
            .unwrap();
        }
        svg.push_str("</svg>\n");
        Ok(svg)
    }

    pub fn emit_svg(&self, path: &Path) -> Result<()> {
        let svg = self.to_svg()?;
        std::fs::write(path, svg).map_err(|e| Error::io(path, e))
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * (1.0 + lo.abs()) {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        trim_zeros(format!("{v:.3}"))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// The data part of an emitted CSV: header fields and numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// Parses the data rows of a report CSV, skipping `#` comment lines.
pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let mut lines = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::usage("CSV has no header"))?
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .enumerate()
        .map(|(i, line)| {
            let row = line
                .split(',')
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| Error::usage(format!("row {}: bad number `{f}`", i + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != header.len() {
                return Err(Error::usage(format!(
                    "row {} has {} fields, expected {}",
                    i + 1,
                    row.len(),
                    header.len()
                )));
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CsvTable { header, rows })
}
