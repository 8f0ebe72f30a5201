//! Self-contained SVG renderings of a sweep summary.

use std::fmt::Write as _;

use bipartify::experiment::{ModelSummary, Summary};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Histogram,
    Ecdf,
    Superiority,
    Similarity,
}

impl PlotKind {
    pub const ALL: [PlotKind; 4] = [
        PlotKind::Histogram,
        PlotKind::Ecdf,
        PlotKind::Superiority,
        PlotKind::Similarity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlotKind::Histogram => "histogram",
            PlotKind::Ecdf => "ecdf",
            PlotKind::Superiority => "superiority",
            PlotKind::Similarity => "similarity",
        }
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

pub fn render_svg(summary: &Summary, model: &str, kind: PlotKind) -> Result<String> {
    let m = summary
        .models
        .iter()
        .find(|m| m.model == model)
        .ok_or_else(|| CliError::MissingSeries(format!("{model} {}", kind.name())))?;
    if m.series.is_empty() {
        return Err(CliError::MissingSeries(format!("{model} {}", kind.name())));
    }
    Ok(match kind {
        PlotKind::Histogram => curves(m, kind, summary.histogram_range),
        PlotKind::Ecdf => curves(m, kind, summary.histogram_range),
        PlotKind::Superiority => heatmap(m, &m.comparison.superiority, "superiority"),
        PlotKind::Similarity => heatmap(m, &m.comparison.similarity, "similarity"),
    })
}

fn header(out: &mut String, width: f64, height: f64, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        width / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Stepped paths, one per method. Histograms draw bin tops; eCDFs rise from
/// 0 at the left edge and hold each level until the next step.
fn curves(m: &ModelSummary, kind: PlotKind, range: (f64, f64)) -> String {
    let (mut lo, mut hi) = range;
    let mut ymax: f64 = 1.0;
    for s in &m.series {
        if kind == PlotKind::Ecdf {
            for &(x, _) in &s.ecdf {
                lo = lo.min(x);
                hi = hi.max(x);
            }
        } else {
            for &(_, d) in &s.histogram {
                ymax = ymax.max(d);
            }
        }
    }
    let pw = W - LEFT - RIGHT;
    let ph = H - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - lo) / (hi - lo) * pw;
    let sy = |y: f64| TOP + ph - y / ymax * ph;

    let mut out = String::new();
    header(&mut out, W, H, &format!("{} {}", m.model, kind.name()));
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for t in 0..=5 {
        let x = lo + (hi - lo) * t as f64 / 5.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{x:.2}</text>"#,
            sx(x),
            TOP + ph + 16.0
        );
        let y = ymax * t as f64 / 5.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{y:.2}</text>"#,
            LEFT - 6.0,
            sy(y) + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">r_b</text>"#,
        LEFT + pw / 2.0,
        H - 12.0
    );

    for (i, s) in m.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        if kind == PlotKind::Ecdf {
            let _ = write!(d, "M{:.2},{:.2}", sx(lo), sy(0.0));
            for &(x, f) in &s.ecdf {
                let _ = write!(d, " H{:.2} V{:.2}", sx(x), sy(f));
            }
            let _ = write!(d, " H{:.2}", sx(hi));
        } else {
            let width = if s.histogram.len() > 1 {
                s.histogram[1].0 - s.histogram[0].0
            } else {
                hi - lo
            };
            let _ = write!(d, "M{:.2},{:.2}", sx(lo), sy(0.0));
            for &(c, dens) in &s.histogram {
                let _ = write!(d, " V{:.2} H{:.2}", sy(dens), sx(c + width / 2.0));
            }
            let _ = write!(d, " V{:.2}", sy(0.0));
        }
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="1.5"/>"#
        );
        let ly = TOP + 14.0 * i as f64 + 8.0;
        let lx = W - RIGHT + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 18.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{}</text>"#,
            lx + 24.0,
            ly + 4.0,
            escape(&s.method)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Colored grid with the numeric value in each cell; rows are the first
/// method of the comparison.
fn heatmap(m: &ModelSummary, values: &[Vec<f64>], label: &str) -> String {
    let names = &m.comparison.methods;
    let k = names.len();
    let cell = 56.0;
    let left = 110.0;
    let top = 110.0;
    let width = left + cell * k as f64 + 20.0;
    let height = top + cell * k as f64 + 20.0;
    let mut out = String::new();
    header(&mut out, width, height, &format!("{} {label}", m.model));
    for (j, name) in names.iter().enumerate() {
        let x = left + cell * (j as f64 + 0.5);
        let _ = writeln!(
            out,
            r#"<text x="{x:.1}" y="{:.1}" text-anchor="start" transform="rotate(-45 {x:.1} {:.1})">{}</text>"#,
            top - 6.0,
            top - 6.0,
            escape(name)
        );
    }
    for (i, row) in values.iter().enumerate() {
        let y = top + cell * i as f64;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            left - 6.0,
            y + cell / 2.0 + 4.0,
            escape(&names[i])
        );
        for (j, &v) in row.iter().enumerate() {
            let x = left + cell * j as f64;
            let shade = (255.0 * (1.0 - v.clamp(0.0, 1.0))).round() as u8;
            let ink = if v > 0.6 { "white" } else { "black" };
            let _ = writeln!(
                out,
                "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{cell}\" height=\"{cell}\" fill=\"rgb({shade},{shade},255)\" stroke=\"#888\"/>"
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" fill="{ink}">{v:.3}</text>"#,
                x + cell / 2.0,
                y + cell / 2.0 + 4.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
