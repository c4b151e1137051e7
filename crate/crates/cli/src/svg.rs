use std::fmt::Write as _;

/// One named trajectory in ground-plane coordinates (x right, z forward).
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const CANVAS: f64 = 720.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders a bird's-eye plot of the given trajectories.
///
/// Both axes share one scale so shapes keep their aspect ratio; coordinates
/// are written with two decimals so identical inputs yield identical bytes.
pub fn render_svg(lines: &[Polyline]) -> String {
    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut z_min = f64::INFINITY;
    let mut z_max = f64::NEG_INFINITY;
    for line in lines {
        for &(x, z) in &line.points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            z_min = z_min.min(z);
            z_max = z_max.max(z);
        }
    }
    // Guard against a single point or an empty input: a span of at least one
    // meter keeps the projection finite.
    let half = 0.525 * (x_max - x_min).max(z_max - z_min).max(1.0);
    let center_x = 0.5 * (x_min + x_max);
    let center_z = 0.5 * (z_min + z_max);
    let scale = (CANVAS - 2.0 * MARGIN) / (2.0 * half);
    let to_px = |x: f64| MARGIN + (x - center_x + half) * scale;
    let to_pz = |z: f64| CANVAS - MARGIN - (z - center_z + half) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"#ffffff\"/>"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{size}\" height=\"{size}\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>",
        size = CANVAS - 2.0 * MARGIN
    );
    let _ = writeln!(
        out,
        "  <text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">x [m]</text>",
        x = CANVAS / 2.0,
        y = CANVAS - MARGIN / 3.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 {x} {y})\">z [m]</text>",
        x = MARGIN / 3.0,
        y = CANVAS / 2.0
    );

    for (i, line) in lines.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for &(x, z) in &line.points {
            if !points.is_empty() {
                points.push(' ');
            }
            let _ = write!(points, "{:.2},{:.2}", to_px(x), to_pz(z));
        }
        let _ = writeln!(
            out,
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{points}\"/>"
        );
    }

    for (i, line) in lines.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN + 18.0 + 18.0 * i as f64;
        let _ = writeln!(
            out,
            "  <line x1=\"{x1}\" y1=\"{y:.2}\" x2=\"{x2}\" y2=\"{y:.2}\" stroke=\"{color}\" stroke-width=\"3\"/>",
            x1 = MARGIN + 10.0,
            x2 = MARGIN + 34.0,
        );
        let _ = writeln!(
            out,
            "  <text x=\"{x}\" y=\"{ty:.2}\" font-family=\"monospace\" font-size=\"12\">{name}</text>",
            x = MARGIN + 40.0,
            ty = y + 4.0,
            name = escape(&line.name)
        );
    }

    out.push_str("</svg>\n");
    out
}
