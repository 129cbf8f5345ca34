// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic SVG line plots of the CSV outputs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::args::PlotKind;
use crate::error::{CliError, CliResult};
use crate::output::write;

pub const WIDTH: f64 = 960.0;
pub const HEIGHT: f64 = 600.0;
const LEFT: f64 = 100.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 70.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// One named polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// Parsed plot input: x-axis label and series.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub x_label: String,
    pub series: Vec<Series>,
}

fn layout(kind: PlotKind) -> (&'static str, &'static [&'static str]) {
    match kind {
        PlotKind::Rates => ("tau", &["gamma1", "gamma2", "gamma_sum", "gamma_diff"]),
        PlotKind::Scan => ("param", &["N_phi", "N_psi", "N_blp", "N1", "twoN1"]),
        PlotKind::Pairs => ("index", &["N", "category"]),
        PlotKind::Additivity => ("param", &["N2", "twoN1", "factorized_prediction"]),
    }
}

fn mismatch(column: &str, msg: impl Into<String>) -> CliError {
    CliError::SchemaMismatch { column: column.to_string(), msg: msg.into() }
}

fn number(column: &str, field: &str, row: usize) -> CliResult<f64> {
    match field.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(mismatch(column, format!("data row {row}: `{field}` is not a finite number"))),
    }
}

/// Check `text` against the schema of `kind` and extract the series.
pub fn parse_csv(text: &str, kind: PlotKind) -> CliResult<PlotData> {
    let (x_col, y_cols) = layout(kind);
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| mismatch(x_col, e.to_string()))?.clone();
    let position = |name: &str| headers.iter().position(|h| h == name).ok_or_else(|| mismatch(name, "missing"));
    let xi = position(x_col)?;
    let yi: Vec<usize> = y_cols.iter().map(|c| position(c)).collect::<CliResult<_>>()?;

    let mut rows = Vec::new();
    for (n, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| mismatch(x_col, format!("data row {}: {e}", n + 1)))?;
        rows.push(rec);
    }
    if rows.is_empty() {
        return Err(mismatch(x_col, "no data rows"));
    }

    let mut series: Vec<Series> = Vec::new();
    for (n, rec) in rows.iter().enumerate() {
        let x = number(x_col, &rec[xi], n + 1)?;
        if kind == PlotKind::Pairs {
            let y = number("N", &rec[yi[0]], n + 1)?;
            let cat = rec[yi[1]].to_string();
            match series.iter_mut().find(|s| s.name == cat) {
                Some(s) => s.points.push((x, y)),
                None => series.push(Series { name: cat, points: vec![(x, y)] }),
            }
        } else {
            for (k, &i) in yi.iter().enumerate() {
                let y = number(y_cols[k], &rec[i], n + 1)?;
                if n == 0 {
                    series.push(Series { name: y_cols[k].to_string(), points: Vec::new() });
                }
                series[k].points.push((x, y));
            }
        }
    }
    Ok(PlotData { x_label: x_col.to_string(), series })
}

fn span(values: impl Iterator<Item = f64>, include_zero: bool) -> (f64, f64) {
    let (mut lo, mut hi) = if include_zero { (0.0, 0.0) } else { (f64::INFINITY, f64::NEG_INFINITY) };
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi - lo <= 0.0 {
        let pad = if lo == 0.0 { 1.0 } else { 0.5 * lo.abs() };
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

fn label(v: f64) -> String {
    format!("{v:.3e}")
}

/// Render `data` as a standalone SVG document. The y range always
/// contains zero, which gets a dashed gridline.
pub fn render_svg(data: &PlotData, title: &str) -> String {
    let points = || data.series.iter().flat_map(|s| s.points.iter());
    let (x_lo, x_hi) = span(points().map(|p| p.0), false);
    let (y_lo, y_hi) = span(points().map(|p| p.1), true);
    let pad = 0.05 * (y_hi - y_lo);
    let (y_lo, y_hi) = (y_lo - pad, y_hi + pad);
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * pw;
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="30" text-anchor="middle" font-size="16">{title}</text>"#, LEFT + pw / 2.0);
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let (xv, yv) = (x_lo + f * (x_hi - x_lo), y_lo + f * (y_hi - y_lo));
        let (x, y) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="black"/><text x="{x:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0,
            label(xv)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{y:.3}" x2="{LEFT}" y2="{y:.3}" stroke="black"/><text x="{:.3}" y="{:.3}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0,
            label(yv)
        );
    }
    let zero = sy(0.0);
    let _ = writeln!(
        s,
        r##"<line id="zero" x1="{LEFT}" y1="{zero:.3}" x2="{:.3}" y2="{zero:.3}" stroke="#888888" stroke-dasharray="4 4"/>"##,
        LEFT + pw
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 20.0,
        data.x_label
    );
    for (k, series) in data.series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = series.points.iter().map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline id="series-{}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            series.name,
            pts.join(" ")
        );
        let ly = TOP + 20.0 + 20.0 * k as f64;
        let lx = LEFT + pw + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            series.name
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Render `input` into `<out_dir>/<input stem>.svg`.
pub fn plot_file(input: &Path, kind: PlotKind, out_dir: &Path) -> CliResult<()> {
    let text = std::fs::read_to_string(input).map_err(|source| CliError::Io { path: input.to_path_buf(), source })?;
    let data = parse_csv(&text, kind)?;
    let title = match kind {
        PlotKind::Rates => "rates",
        PlotKind::Scan => "scan",
        PlotKind::Pairs => "pairs",
        PlotKind::Additivity => "additivity",
    };
    let stem = input.file_stem().map_or_else(|| PathBuf::from("plot"), PathBuf::from);
    let path = out_dir.join(stem).with_extension("svg");
    write(&path, &render_svg(&data, title))?;
    println!("wrote {}", path.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const RATES: &str = "# command = rates\ntau,gamma1,gamma2,gamma_sum,gamma_diff\n0,0,0,0,0\n1,1,-2,-1,3\n";

    #[test]
    fn parses_rates() {
        let d = parse_csv(RATES, PlotKind::Rates).unwrap();
        assert_eq!(d.series.len(), 4);
        assert_eq!(d.series[2].points, vec![(0.0, 0.0), (1.0, -1.0)]);
    }

    #[test]
    fn schema_errors_name_the_column() {
        let e = parse_csv("tau,gamma1\n", PlotKind::Rates).unwrap_err();
        assert!(matches!(e, CliError::SchemaMismatch { ref column, .. } if column == "gamma2"));
        let e = parse_csv("tau,gamma1,gamma2,gamma_sum,gamma_diff\n", PlotKind::Rates).unwrap_err();
        assert!(matches!(e, CliError::SchemaMismatch { ref column, .. } if column == "tau"));
        let e = parse_csv("tau,gamma1,gamma2,gamma_sum,gamma_diff\n0,0,x,0,0\n", PlotKind::Rates).unwrap_err();
        assert!(matches!(e, CliError::SchemaMismatch { ref column, .. } if column == "gamma2"));
    }

    #[test]
    fn svg_is_deterministic_with_zero_line() {
        let d = parse_csv(RATES, PlotKind::Rates).unwrap();
        let a = render_svg(&d, "rates");
        assert_eq!(a, render_svg(&d, "rates"));
        assert!(a.contains(r#"width="960" height="600""#));
        assert!(a.contains(r#"id="zero""#));
        assert!(a.contains(r#"id="series-gamma_sum""#));
    }

    #[test]
    fn pairs_group_by_category() {
        let csv = "index,category,N,argmax_flag\n0,separable,0.1,0\n1,mixed,0.2,1\n2,separable,0.3,0\n";
        let d = parse_csv(csv, PlotKind::Pairs).unwrap();
        assert_eq!(d.series.len(), 2);
        assert_eq!(d.series[0].points, vec![(0.0, 0.1), (2.0, 0.3)]);
    }
}
