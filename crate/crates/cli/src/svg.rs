//! Minimal standalone SVG 1.1 line plots. Purely presentational; the CSV
//! files are the data contract.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 58.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

impl Plot {
    pub fn render(&self) -> String {
        let finite: Vec<(f64, f64)> = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .collect();
        let (x_min, x_max) = padded_range(finite.iter().map(|p| p.0));
        let (y_min, y_max) = padded_range(finite.iter().map(|p| p.1));

        let x_px = |x: f64| {
            MARGIN_LEFT + (x - x_min) / (x_max - x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
        };
        let y_px = |y: f64| {
            HEIGHT
                - MARGIN_BOTTOM
                - (y - y_min) / (y_max - y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" \
             version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
        );
        let _ = writeln!(out, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");

        // gridlines and ticks
        for x in nice_ticks(x_min, x_max) {
            let px = x_px(x);
            let _ = writeln!(
                out,
                "<line x1=\"{px:.2}\" y1=\"{MARGIN_TOP}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
                 stroke=\"#dddddd\" stroke-width=\"1\"/>",
                HEIGHT - MARGIN_BOTTOM
            );
            let _ = writeln!(
                out,
                "<text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
                 font-size=\"12\">{}</text>",
                HEIGHT - MARGIN_BOTTOM + 18.0,
                tick_label(x)
            );
        }
        for y in nice_ticks(y_min, y_max) {
            let py = y_px(y);
            let _ = writeln!(
                out,
                "<line x1=\"{MARGIN_LEFT}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" \
                 stroke=\"#dddddd\" stroke-width=\"1\"/>",
                WIDTH - MARGIN_RIGHT
            );
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" \
                 font-size=\"12\">{}</text>",
                MARGIN_LEFT - 8.0,
                py + 4.0,
                tick_label(y)
            );
        }

        // frame
        let _ = writeln!(
            out,
            "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>",
            WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
            HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
        );

        // curves
        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let mut path = String::new();
            for &(x, y) in &series.points {
                if !(x.is_finite() && y.is_finite()) {
                    continue;
                }
                let _ = write!(path, "{:.2},{:.2} ", x_px(x), y_px(y));
            }
            if !path.is_empty() {
                let _ = writeln!(
                    out,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
                    path.trim_end()
                );
            }
        }

        // legend
        for (i, series) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let y = MARGIN_TOP + 16.0 + 16.0 * i as f64;
            let x = WIDTH - MARGIN_RIGHT - 150.0;
            let _ = writeln!(
                out,
                "<line x1=\"{x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{color}\" \
                 stroke-width=\"2\"/><text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" \
                 font-size=\"12\">{}</text>",
                x + 22.0,
                x + 28.0,
                y + 4.0,
                escape(&series.label)
            );
        }

        // labels
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"15\">{}</text>",
            WIDTH / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"13\">{}</text>",
            WIDTH / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            "<text x=\"20\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"13\" transform=\"rotate(-90 20 {:.2})\">{}</text>",
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(&self.y_label)
        );
        out.push_str("</svg>\n");
        out
    }
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.04 * (hi - lo);
    (lo - pad, hi + pad)
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw_step = span / 6.0;
    let mag = 10f64.powf(raw_step.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| s >= raw_step)
        .unwrap_or(mag * 10.0);
    let mut ticks = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi {
        ticks.push(if t == 0.0 { 0.0 } else { t });
        t += step;
    }
    ticks
}

fn tick_label(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-3..1e4).contains(&a) {
        let s = format!("{x:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{x:.1e}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_a_wellformed_document() {
        let plot = Plot {
            title: "demo".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![Series {
                label: "K = 0.5".into(),
                points: vec![(0.0, 0.0), (1.0, 1.0), (2.0, f64::NAN), (3.0, 0.5)],
            }],
        };
        let svg = plot.render();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg xmlns"));
        assert!(svg.contains("polyline"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn ticks_cover_the_range() {
        let t = nice_ticks(0.0, 10.0);
        assert!(t.first().copied().unwrap() >= 0.0);
        assert!(t.last().copied().unwrap() <= 10.0);
        assert!(t.len() >= 4);
    }
}
