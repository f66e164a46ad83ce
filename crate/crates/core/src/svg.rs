//! Minimal standalone SVG emitter for log-log convergence plots. Two or
//! more series, decade ticks, no external dependencies.

const WIDTH: f64 = 840.0;
const HEIGHT: f64 = 560.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 50.0;
const MARGIN_B: f64 = 70.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub struct Series<'a> {
    pub label: &'a str,
    /// (x, y) points; non-positive values are skipped (log axes).
    pub points: Vec<(f64, f64)>,
}

fn decades(lo: f64, hi: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut d = lo.log10().floor() as i32;
    while (10f64).powi(d) <= hi * 1.0001 {
        let v = (10f64).powi(d);
        if v >= lo * 0.9999 {
            out.push(v);
        }
        d += 1;
    }
    out
}

/// Render a log-log plot. Returns the SVG document as a string.
pub fn log_log_plot(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .collect();
    let (x_min, x_max) = pts
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &(x, _)| (lo.min(x), hi.max(x)));
    let (y_min, y_max) = pts
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &(_, y)| (lo.min(y), hi.max(y)));
    let (x_min, x_max) = if pts.is_empty() { (1.0, 10.0) } else { (x_min, x_max) };
    let (y_min, y_max) = if pts.is_empty() { (1.0, 10.0) } else { (y_min, y_max) };
    let pad = |lo: f64, hi: f64| {
        if lo == hi {
            (lo / 2.0, hi * 2.0)
        } else {
            (lo, hi)
        }
    };
    let (x_min, x_max) = pad(x_min, x_max);
    let (y_min, y_max) = pad(y_min, y_max);

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let sx = |x: f64| MARGIN_L + (x.log10() - x_min.log10()) / (x_max.log10() - x_min.log10()) * plot_w;
    let sy = |y: f64| MARGIN_T + plot_h - (y.log10() - y_min.log10()) / (y_max.log10() - y_min.log10()) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        title
    ));

    // frame
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"#333\"/>\n"
    ));

    for tx in decades(x_min, x_max) {
        let x = sx(tx);
        svg.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{MARGIN_T}\" x2=\"{x}\" y2=\"{}\" stroke=\"#ddd\"/>\n",
            MARGIN_T + plot_h
        ));
        svg.push_str(&format!(
            "<text x=\"{x}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">1e{}</text>\n",
            MARGIN_T + plot_h + 20.0,
            tx.log10().round() as i64
        ));
    }
    for ty in decades(y_min, y_max) {
        let y = sy(ty);
        svg.push_str(&format!(
            "<line x1=\"{MARGIN_L}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#ddd\"/>\n",
            MARGIN_L + plot_w
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">1e{}</text>\n",
            MARGIN_L - 8.0,
            y + 4.0,
            ty.log10().round() as i64
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 20.0,
        x_label
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 {})\">{}</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        y_label
    ));

    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = s
            .points
            .iter()
            .filter(|&&(x, y)| x > 0.0 && y > 0.0)
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        if path.len() >= 2 {
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
                path.join(" ")
            ));
        }
        for &(x, y) in s.points.iter().filter(|&&(x, y)| x > 0.0 && y > 0.0) {
            svg.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
                sx(x),
                sy(y)
            ));
        }
        let ly = MARGIN_T + 18.0 + 20.0 * i as f64;
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            MARGIN_L + plot_w - 170.0,
            MARGIN_L + plot_w - 140.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            MARGIN_L + plot_w - 132.0,
            ly + 4.0,
            s.label
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_well_formed_document() {
        let svg = log_log_plot(
            "convergence",
            "x",
            "error",
            &[
                Series {
                    label: "abs_error",
                    points: vec![(1e3, 0.03), (1e4, 0.01), (1e5, 0.004)],
                },
                Series {
                    label: "bound",
                    points: vec![(1e3, 1.5), (1e4, 1.1), (1e5, 0.9)],
                },
            ],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("abs_error"));
    }

    #[test]
    fn skips_nonpositive_points() {
        let svg = log_log_plot(
            "t",
            "x",
            "y",
            &[Series {
                label: "s",
                points: vec![(1e3, 0.0), (1e4, 0.01)],
            }],
        );
        assert!(!svg.contains("NaN"));
        assert_eq!(svg.matches("<circle").count(), 1);
    }
}
