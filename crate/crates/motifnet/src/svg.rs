//! Small deterministic SVG chart toolkit: multi-panel figures with
//! line series and scatter markers.
//!
//! Data series are the only `<polyline>` elements in the output; axes,
//! grids, and reference lines use `<line>`, so a chart's series count
//! can be checked by counting polylines.

use std::fmt::Write;

/// Stroke colors per motif type index 0..6.
pub const TYPE_COLORS: [&str; 7] = [
    "#9e9e9e", "#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd", "#8c564b",
];

/// Marker color for censored persistence intervals.
pub const CENSORED_COLOR: &str = "#444444";

/// Stroke colors per weekday index Mon..Sun.
pub const WEEKDAY_COLORS: [&str; 7] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d",
];

const PANEL_WIDTH: f64 = 380.0;
const PANEL_HEIGHT: f64 = 260.0;
const MARGIN_LEFT: f64 = 52.0;
const MARGIN_RIGHT: f64 = 14.0;
const MARGIN_TOP: f64 = 34.0;
const MARGIN_BOTTOM: f64 = 40.0;
const FIGURE_PAD: f64 = 10.0;
const TITLE_BAND: f64 = 28.0;

#[derive(Debug, Clone)]
pub struct LineSeries {
    pub label: String,
    pub color: String,
    pub width: f64,
    pub opacity: f64,
    /// x plus an optional y; `None` breaks the line.
    pub points: Vec<(f64, Option<f64>)>,
}

#[derive(Debug, Clone)]
pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub radius: f64,
    pub color: String,
}

#[derive(Debug, Clone, Default)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    lines: Vec<LineSeries>,
    markers: Vec<Marker>,
    h_refs: Vec<f64>,
    diagonal: bool,
    include_zero_y: bool,
    legend: bool,
}

impl Panel {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Panel {
        Panel {
            title: title.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            ..Panel::default()
        }
    }

    pub fn line(&mut self, label: &str, color: &str, points: Vec<(f64, Option<f64>)>) {
        self.lines.push(LineSeries {
            label: label.to_string(),
            color: color.to_string(),
            width: 1.5,
            opacity: 1.0,
            points,
        });
    }

    pub fn line_styled(
        &mut self,
        label: &str,
        color: &str,
        width: f64,
        opacity: f64,
        points: Vec<(f64, Option<f64>)>,
    ) {
        self.lines.push(LineSeries {
            label: label.to_string(),
            color: color.to_string(),
            width,
            opacity,
            points,
        });
    }

    pub fn marker(&mut self, x: f64, y: f64, radius: f64, color: &str) {
        self.markers.push(Marker {
            x,
            y,
            radius,
            color: color.to_string(),
        });
    }

    /// Horizontal reference line included in the y bounds.
    pub fn h_ref(&mut self, y: f64) {
        self.h_refs.push(y);
    }

    /// Draw the y = x diagonal.
    pub fn with_diagonal(&mut self) {
        self.diagonal = true;
    }

    pub fn with_zero_y(&mut self) {
        self.include_zero_y = true;
    }

    pub fn with_legend(&mut self) {
        self.legend = true;
    }

    fn bounds(&self) -> ((f64, f64), (f64, f64)) {
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for s in &self.lines {
            for &(x, y) in &s.points {
                if let Some(y) = y {
                    if x.is_finite() && y.is_finite() {
                        xs.push(x);
                        ys.push(y);
                    }
                }
            }
        }
        for m in &self.markers {
            if m.x.is_finite() && m.y.is_finite() {
                xs.push(m.x);
                ys.push(m.y);
            }
        }
        ys.extend(self.h_refs.iter().copied());
        if self.include_zero_y {
            ys.push(0.0);
        }
        let span = |v: &[f64]| -> (f64, f64) {
            if v.is_empty() {
                return (0.0, 1.0);
            }
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &x in v {
                lo = lo.min(x);
                hi = hi.max(x);
            }
            if lo == hi {
                lo -= 0.5;
                hi += 0.5;
            }
            let pad = (hi - lo) * 0.05;
            (lo - pad, hi + pad)
        };
        (span(&xs), span(&ys))
    }
}

/// Round `span / target` up to a 1-2-5 step.
fn nice_step(span: f64, target: usize) -> f64 {
    let raw = span / target.max(1) as f64;
    // NaN and non-positive spans both fall back to a unit step.
    if raw.is_nan() || raw <= 0.0 {
        return 1.0;
    }
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let factor = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    factor * mag
}

fn ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let step = nice_step(hi - lo, target);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + step * 1e-9 {
        // snap near-zero ticks produced by floating-point drift
        out.push(if t.abs() < step * 1e-9 { 0.0 } else { t });
        t += step;
    }
    out
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    let s = if !(1e-4..1e6).contains(&a) {
        format!("{v:e}")
    } else {
        let mut s = format!("{v:.4}");
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    };
    s
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// A grid of panels rendered as one standalone SVG document.
#[derive(Debug, Clone)]
pub struct Figure {
    pub title: String,
    pub columns: usize,
    pub panels: Vec<Panel>,
}

impl Figure {
    pub fn new(title: &str, columns: usize) -> Figure {
        Figure {
            title: title.to_string(),
            columns: columns.max(1),
            panels: Vec::new(),
        }
    }

    pub fn panel(&mut self, panel: Panel) {
        self.panels.push(panel);
    }

    pub fn render(&self) -> String {
        let columns = self.columns.min(self.panels.len().max(1));
        let rows = self.panels.len().div_ceil(columns).max(1);
        let width = FIGURE_PAD * 2.0 + columns as f64 * PANEL_WIDTH;
        let height = TITLE_BAND + FIGURE_PAD * 2.0 + rows as f64 * PANEL_HEIGHT;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\">",
            w = px(width),
            h = px(height)
        );
        let _ = writeln!(
            s,
            "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
            px(width),
            px(height)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">{}</text>",
            px(width / 2.0),
            escape(&self.title)
        );
        for (i, panel) in self.panels.iter().enumerate() {
            let col = (i % columns) as f64;
            let row = (i / columns) as f64;
            let ox = FIGURE_PAD + col * PANEL_WIDTH;
            let oy = TITLE_BAND + FIGURE_PAD + row * PANEL_HEIGHT;
            render_panel(&mut s, panel, ox, oy);
        }
        s.push_str("</svg>\n");
        s
    }
}

fn render_panel(s: &mut String, panel: &Panel, ox: f64, oy: f64) {
    let ((x_lo, x_hi), (y_lo, y_hi)) = panel.bounds();
    let plot_x = ox + MARGIN_LEFT;
    let plot_y = oy + MARGIN_TOP;
    let plot_w = PANEL_WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = PANEL_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| plot_x + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| plot_y + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
        px(plot_x + plot_w / 2.0),
        px(oy + 16.0),
        escape(&panel.title)
    );

    // grid and ticks
    for t in ticks(x_lo, x_hi, 6) {
        let x = sx(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"#e0e0e0\" stroke-width=\"0.5\"/>",
            x = px(x),
            y1 = px(plot_y),
            y2 = px(plot_y + plot_h)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"9\">{}</text>",
            px(x),
            px(plot_y + plot_h + 13.0),
            fmt_tick(t)
        );
    }
    for t in ticks(y_lo, y_hi, 5) {
        let y = sy(t);
        let _ = writeln!(
            s,
            "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#e0e0e0\" stroke-width=\"0.5\"/>",
            x1 = px(plot_x),
            x2 = px(plot_x + plot_w),
            y = px(y)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"9\">{}</text>",
            px(plot_x - 4.0),
            px(y + 3.0),
            fmt_tick(t)
        );
    }

    // reference lines
    for &y in &panel.h_refs {
        let _ = writeln!(
            s,
            "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#888888\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"/>",
            x1 = px(plot_x),
            x2 = px(plot_x + plot_w),
            y = px(sy(y))
        );
    }
    if panel.diagonal {
        let lo = x_lo.max(y_lo);
        let hi = x_hi.min(y_hi);
        if lo < hi {
            let _ = writeln!(
                s,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888888\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"/>",
                px(sx(lo)),
                px(sy(lo)),
                px(sx(hi)),
                px(sy(hi))
            );
        }
    }

    // data
    for series in &panel.lines {
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, s: &mut String| {
            if run.len() >= 2 {
                let _ = writeln!(
                    s,
                    "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-opacity=\"{}\" points=\"{}\"/>",
                    series.color,
                    series.width,
                    series.opacity,
                    run.join(" ")
                );
            } else if run.len() == 1 {
                // an isolated defined point still gets ink
                let coords: Vec<&str> = run[0].split(',').collect();
                let _ = writeln!(
                    s,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"1.5\" fill=\"{}\" fill-opacity=\"{}\"/>",
                    coords[0], coords[1], series.color, series.opacity
                );
            }
            run.clear();
        };
        for &(x, y) in &series.points {
            match y {
                Some(y) if x.is_finite() && y.is_finite() => {
                    run.push(format!("{},{}", px(sx(x)), px(sy(y))));
                }
                _ => flush(&mut run, s),
            }
        }
        flush(&mut run, s);
    }
    for m in &panel.markers {
        if m.x.is_finite() && m.y.is_finite() {
            let _ = writeln!(
                s,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" fill-opacity=\"0.55\"/>",
                px(sx(m.x)),
                px(sy(m.y)),
                px(m.radius.max(1.0)),
                m.color
            );
        }
    }

    // frame and axis labels
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>",
        px(plot_x),
        px(plot_y),
        px(plot_w),
        px(plot_h)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"10\">{}</text>",
        px(plot_x + plot_w / 2.0),
        px(plot_y + plot_h + 28.0),
        escape(&panel.x_label)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"10\" transform=\"rotate(-90 {} {})\">{}</text>",
        px(ox + 13.0),
        px(plot_y + plot_h / 2.0),
        px(ox + 13.0),
        px(plot_y + plot_h / 2.0),
        escape(&panel.y_label)
    );

    if panel.legend {
        let mut ly = plot_y + 10.0;
        for series in &panel.lines {
            if series.label.is_empty() {
                continue;
            }
            let _ = writeln!(
                s,
                "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"{c}\" stroke-width=\"2\"/>",
                x1 = px(plot_x + plot_w - 74.0),
                x2 = px(plot_x + plot_w - 58.0),
                y = px(ly - 3.0),
                c = series.color
            );
            let _ = writeln!(
                s,
                "<text x=\"{}\" y=\"{}\" font-size=\"9\">{}</text>",
                px(plot_x + plot_w - 54.0),
                px(ly),
                escape(&series.label)
            );
            ly += 12.0;
        }
    }
}
