//! Precision-yield curves and the area over them.

use std::fmt::Write as _;
use std::io::{self, Write};

use serde::Serialize;

use super::precision::sample_ranks;
use super::{AnnotationSet, EvalError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    /// Estimated number of true positives up to this point.
    #[serde(rename = "yield")]
    pub yield_: f64,
    pub precision: f64,
}

/// One point per positive label, walking the labeled phrases in rank order.
///
/// With `sample_size == top_n` (census mode) every rank in the top `top_n` is
/// labeled and the `i`-th positive at rank `r` gives `(i, i / r)`. Otherwise a
/// uniform sample of `sample_size` ranks is labeled; the `i`-th positive at
/// sample position `j` gives precision `i / j` and yield `i * top_n /
/// sample_size`, since each sampled phrase stands for `top_n / sample_size`
/// phrases of the prefix.
pub fn precision_yield_curve<S: AsRef<str>>(
    ranked: &[S],
    annotations: &AnnotationSet,
    top_n: usize,
    sample_size: usize,
    seed: u64,
) -> Result<Vec<CurvePoint>, EvalError> {
    if sample_size == 0 {
        return Err(EvalError::InvalidArgument("sample size must be positive".into()));
    }
    let ranks = sample_ranks(ranked.len(), top_n, sample_size, seed)?;
    let phrases: Vec<&str> = ranks.iter().map(|&r| ranked[r].as_ref()).collect();
    let labels = annotations.labels_for(&phrases)?;
    Ok(curve_from_labels(&labels, top_n as f64 / sample_size as f64))
}

/// Curve from labels already in rank order, each standing for `scale` phrases.
pub fn curve_from_labels(labels: &[bool], scale: f64) -> Vec<CurvePoint> {
    let mut positives = 0usize;
    labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l)
        .map(|(j, _)| {
            positives += 1;
            CurvePoint {
                yield_: positives as f64 * scale,
                precision: positives as f64 / (j + 1) as f64,
            }
        })
        .collect()
}

/// Area between precision 1 and a step curve over `[0, max_yield]`.
///
/// The interval `(y[i-1], y[i]]` carries the precision of point `i` (with
/// `y[-1] = 0`), and `(y[last], max_yield]` carries the last precision.
pub fn area_over_curve(curve: &[CurvePoint], max_yield: f64) -> Result<f64, EvalError> {
    let last = curve.last().ok_or(EvalError::EmptyCurve)?;
    if max_yield < last.yield_ {
        return Err(EvalError::InvalidArgument(format!(
            "max yield {max_yield} is below the final yield {}",
            last.yield_
        )));
    }
    let mut area = 0.0;
    let mut prev = 0.0;
    for p in curve {
        area += (p.yield_ - prev) * (1.0 - p.precision);
        prev = p.yield_;
    }
    area += (max_yield - last.yield_) * (1.0 - last.precision);
    Ok(area)
}

pub fn write_curve_csv<W: Write>(curve: &[CurvePoint], mut out: W) -> io::Result<()> {
    writeln!(out, "yield,precision")?;
    for p in curve {
        writeln!(out, "{:.6},{:.6}", p.yield_, p.precision)?;
    }
    Ok(())
}

const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

/// Self-contained SVG line plot of one or more labeled curves.
pub fn render_svg(curves: &[(&str, &[CurvePoint])]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 50.0;
    let max_yield = curves
        .iter()
        .flat_map(|(_, c)| c.iter().map(|p| p.yield_))
        .fold(1.0f64, f64::max);
    let x = |y: f64| M + (W - 2.0 * M) * y / max_yield;
    let y = |p: f64| H - M - (H - 2.0 * M) * p;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{M} {top} V{bottom} H{right}" stroke="black" fill="none"/>"#,
        top = M,
        bottom = H - M,
        right = W - M
    );
    for tick in 0..=4 {
        let p = tick as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{p:.2}</text>"#,
            M - 6.0,
            y(p) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">yield (max {max_yield:.0})</text>"#,
        W / 2.0,
        H - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{:.1}" transform="rotate(-90 14 {:.1})" text-anchor="middle">precision</text>"#,
        H / 2.0,
        H / 2.0
    );
    for (i, (label, curve)) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        for (k, p) in curve.iter().enumerate() {
            let _ = write!(d, "{}{:.2} {:.2} ", if k == 0 { 'M' } else { 'L' }, x(p.yield_), y(p.precision));
        }
        let _ = writeln!(
            svg,
            r#"<path d="{}" stroke="{color}" stroke-width="1.5" fill="none"/>"#,
            d.trim_end()
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" fill="{color}">{}</text>"#,
            W - M - 120.0,
            M + 16.0 * (i as f64 + 1.0),
            escape(label)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
