//! Minimal SVG plots: plain shapes, linear scales, no styling beyond stroke
//! width and opacity.

use std::collections::BTreeMap;
use std::fmt::Write;

use simple_bundles::{Coord, Graph, NodeId, SignatureRow};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;

fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    )
}

/// Maps `[lo, hi]` onto `[0, 1]`; a degenerate range maps to 0.5.
fn unit(x: f64, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        (x - lo) / (hi - lo)
    } else {
        0.5
    }
}

fn range(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    values
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
}

/// Nodes at their coordinates (on a circle when the graph has none) and SBN
/// edges drawn wider and darker with weight.
pub fn network(graph: &Graph, weights: &BTreeMap<(NodeId, NodeId), f64>) -> String {
    let n = graph.node_count();
    let coords: Vec<Coord> = match graph.coords() {
        Some(c) => c.to_vec(),
        None => (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect(),
    };
    let (x0, x1) = range(coords.iter().map(|c| c[0]));
    let (y0, y1) = range(coords.iter().map(|c| c[1]));
    let span = (x1 - x0).max(y1 - y0);
    let inner = SIZE - 2.0 * MARGIN;
    let place = |c: Coord| {
        let s = if span > 0.0 { inner / span } else { 0.0 };
        (MARGIN + (c[0] - x0) * s, SIZE - MARGIN - (c[1] - y0) * s)
    };
    let (w0, w1) = range(weights.values().copied());

    let mut body = String::new();
    for (&(a, b), &w) in weights {
        let t = unit(w, w0, w1);
        let ((ax, ay), (bx, by)) = (place(coords[a]), place(coords[b]));
        writeln!(
            body,
            "<line x1=\"{ax:.2}\" y1=\"{ay:.2}\" x2=\"{bx:.2}\" y2=\"{by:.2}\" stroke=\"black\" \
             stroke-width=\"{:.2}\" stroke-opacity=\"{:.2}\"/>",
            0.5 + 3.5 * t,
            0.15 + 0.85 * t
        )
        .unwrap();
    }
    for &c in &coords {
        let (x, y) = place(c);
        writeln!(
            body,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"steelblue\"/>"
        )
        .unwrap();
    }
    document(SIZE, SIZE, &body)
}

pub struct Panel {
    pub title: String,
    pub values: Vec<f64>,
}

const BINS: usize = 10;
const PANEL_W: f64 = 260.0;
const PANEL_H: f64 = 160.0;

/// One bar histogram per panel, laid out `columns` to a row.
pub fn histograms(panels: &[Panel], columns: usize) -> String {
    let mut body = String::new();
    for (i, panel) in panels.iter().enumerate() {
        let (ox, oy) = (
            (i % columns) as f64 * PANEL_W,
            (i / columns) as f64 * PANEL_H,
        );
        let (lo, hi) = range(panel.values.iter().copied());
        let mut counts = [0usize; BINS];
        for &v in &panel.values {
            counts[((unit(v, lo, hi) * BINS as f64) as usize).min(BINS - 1)] += 1;
        }
        let tallest = counts.iter().copied().max().unwrap_or(0).max(1) as f64;
        let (plot_w, plot_h) = (PANEL_W - 2.0 * MARGIN, PANEL_H - 2.0 * MARGIN);
        let bar_w = plot_w / BINS as f64;
        writeln!(
            body,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\">{} (n={})</text>",
            ox + MARGIN,
            oy + 18.0,
            panel.title,
            panel.values.len()
        )
        .unwrap();
        for (b, &count) in counts.iter().enumerate() {
            let h = plot_h * count as f64 / tallest;
            writeln!(
                body,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{h:.2}\" fill=\"steelblue\"/>",
                ox + MARGIN + b as f64 * bar_w,
                oy + MARGIN + plot_h - h,
                bar_w - 1.0
            )
            .unwrap();
        }
        if !panel.values.is_empty() {
            writeln!(
                body,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"9\">{lo:.3}</text>\
                 <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"9\" text-anchor=\"end\">{hi:.3}</text>",
                ox + MARGIN,
                oy + PANEL_H - 12.0,
                ox + PANEL_W - MARGIN,
                oy + PANEL_H - 12.0
            )
            .unwrap();
        }
    }
    let rows = panels.len().div_ceil(columns).max(1);
    document(PANEL_W * columns as f64, PANEL_H * rows as f64, &body)
}

/// Mean SBN weight against length with one-std error bars.
pub fn signature(rows: &[SignatureRow]) -> String {
    let points: Vec<(f64, f64, f64)> = rows
        .iter()
        .filter_map(|r| Some((r.length as f64, r.mean_weight?, r.std_weight?)))
        .collect();
    let (l0, l1) = range(points.iter().map(|p| p.0));
    let (v0, v1) = range(points.iter().flat_map(|p| [p.1 - p.2, p.1 + p.2]));
    let inner = SIZE - 2.0 * MARGIN;
    let place = |l: f64, v: f64| {
        (
            MARGIN + unit(l, l0, l1) * inner,
            SIZE - MARGIN - unit(v, v0, v1) * inner,
        )
    };

    let mut body = String::new();
    let line: Vec<String> = points
        .iter()
        .map(|&(l, m, _)| {
            let (x, y) = place(l, m);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    writeln!(
        body,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\"/>",
        line.join(" ")
    )
    .unwrap();
    for &(l, m, s) in &points {
        let (x, y) = place(l, m);
        let (_, top) = place(l, m + s);
        let (_, bottom) = place(l, m - s);
        writeln!(
            body,
            "<line x1=\"{x:.2}\" y1=\"{top:.2}\" x2=\"{x:.2}\" y2=\"{bottom:.2}\" stroke=\"black\"/>\
             <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"steelblue\"/>\
             <text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"middle\">{l}</text>",
            SIZE - 8.0
        )
        .unwrap();
    }
    document(SIZE, SIZE, &body)
}
