//! Serialization of zero-sum and diagnostic reports: CSV rows, JSON lines
//! and a log-log SVG plot of the residual ratio.

use crate::error::{Error, Result};
use crate::experiment::ZeroSumReport;
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fmt::Write as _;

pub const CSV_HEADER: &str = "T1,T2,y,x,A,Theta,zero_count,S_re,S_im,M_re,M_im,residual_abs,ratio";

/// Shortest representation that parses back to the same value, in
/// scientific notation outside [1e-5, 1e16).
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// The CSV projection of a [`ZeroSumReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub t1: f64,
    pub t2: f64,
    pub y: f64,
    pub x: u64,
    pub a: f64,
    pub theta: f64,
    pub zero_count: usize,
    pub s_re: f64,
    pub s_im: f64,
    pub m_re: f64,
    pub m_im: f64,
    pub residual_abs: f64,
    pub ratio: f64,
}

impl From<&ZeroSumReport> for CsvRow {
    fn from(r: &ZeroSumReport) -> Self {
        Self {
            t1: r.spec.t1,
            t2: r.spec.t2,
            y: r.spec.y,
            x: r.spec.x,
            a: r.spec.a,
            theta: r.spec.theta,
            zero_count: r.zero_count,
            s_re: r.s.re,
            s_im: r.s.im,
            m_re: r.m.re,
            m_im: r.m.im,
            residual_abs: r.residual_abs,
            ratio: r.ratio,
        }
    }
}

impl CsvRow {
    /// Floats use the shortest representation that parses back exactly.
    pub fn to_line(&self) -> String {
        let f = format_float;
        [
            f(self.t1),
            f(self.t2),
            f(self.y),
            self.x.to_string(),
            f(self.a),
            f(self.theta),
            self.zero_count.to_string(),
            f(self.s_re),
            f(self.s_im),
            f(self.m_re),
            f(self.m_im),
            f(self.residual_abs),
            f(self.ratio),
        ]
        .join(",")
    }

    pub fn parse(line: &str, line_no: usize) -> Result<Self> {
        let fields: Vec<&str> = line.trim_end_matches('\n').split(',').collect();
        if fields.len() != 13 {
            return Err(Error::ParseError {
                line: line_no,
                message: format!("expected 13 fields, found {}", fields.len()),
            });
        }
        let f = |i: usize| -> Result<f64> {
            fields[i].trim().parse::<f64>().map_err(|e| Error::ParseError {
                line: line_no,
                message: format!("field {}: {e}", i + 1),
            })
        };
        let u = |i: usize| -> Result<u64> {
            fields[i].trim().parse::<u64>().map_err(|e| Error::ParseError {
                line: line_no,
                message: format!("field {}: {e}", i + 1),
            })
        };
        Ok(Self {
            t1: f(0)?,
            t2: f(1)?,
            y: f(2)?,
            x: u(3)?,
            a: f(4)?,
            theta: f(5)?,
            zero_count: u(6)? as usize,
            s_re: f(7)?,
            s_im: f(8)?,
            m_re: f(9)?,
            m_im: f(10)?,
            residual_abs: f(11)?,
            ratio: f(12)?,
        })
    }
}

/// Header plus one row per report.
pub fn to_csv(reports: &[ZeroSumReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&CsvRow::from(r).to_line());
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CSV_HEADER => {}
        _ => {
            return Err(Error::ParseError {
                line: 1,
                message: "missing or unexpected CSV header".into(),
            })
        }
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| CsvRow::parse(l, i + 2))
        .collect()
}

/// One JSON document per line.
pub fn to_json_lines<T: Serialize>(items: &[T]) -> Result<String> {
    let mut out = String::new();
    for it in items {
        out.push_str(&serde_json::to_string(it).map_err(|e| Error::Io(e.to_string()))?);
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_json_lines<T: DeserializeOwned>(text: &str) -> Result<Vec<T>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::ParseError {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// A named sequence of (T, ratio) points.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Log-log plot of ratio against T with one polyline per series. Points
/// with a non-positive or non-finite coordinate are skipped.
pub fn residual_svg(series: &[Series]) -> String {
    let usable = |&(x, y): &(f64, f64)| x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite();
    let pts: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied().filter(usable))
        .map(|(x, y)| (x.log10(), y.log10()))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = pts.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    );
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    x0 = x0.floor();
    x1 = x1.ceil().max(x0 + 1.0);
    y0 = y0.floor();
    y1 = y1.ceil().max(y0 + 1.0);
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (SVG_W - 2.0 * MARGIN);
    let py = |y: f64| SVG_H - MARGIN - (y - y0) / (y1 - y0) * (SVG_H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g stroke="black" fill="none"><line x1="{}" y1="{}" x2="{}" y2="{}"/><line x1="{}" y1="{}" x2="{}" y2="{}"/></g>"#,
        px(x0), py(y0), px(x1), py(y0), px(x0), py(y0), px(x0), py(y1)
    );
    for k in (x0 as i64)..=(x1 as i64) {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">1e{k}</text>"#,
            px(k as f64),
            py(y0) + 18.0
        );
    }
    for k in (y0 as i64)..=(y1 as i64) {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">1e{k}</text>"#,
            px(x0) - 6.0,
            py(k as f64) + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">T</text>"#,
        SVG_W / 2.0,
        SVG_H - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{:.1}" text-anchor="middle" transform="rotate(-90 15 {:.1})">ratio</text>"#,
        SVG_H / 2.0,
        SVG_H / 2.0
    );
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = ser
            .points
            .iter()
            .copied()
            .filter(usable)
            .map(|(x, y)| format!("{:.2},{:.2}", px(x.log10()), py(y.log10())))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
            coords.join(" "),
            escape(&ser.label)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" fill="{color}">{}</text>"#,
            SVG_W - MARGIN - 120.0,
            MARGIN + 16.0 * i as f64,
            escape(&ser.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// One series from consecutive successful reports, keyed by T.
pub fn series_from_reports(label: &str, reports: &[ZeroSumReport]) -> Series {
    Series {
        label: label.to_string(),
        points: reports.iter().map(|r| (r.spec.t_bold, r.ratio)).collect(),
    }
}
