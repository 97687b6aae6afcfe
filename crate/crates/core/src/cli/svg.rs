use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const PAD: f64 = 40.0;
// enough points for a smooth curve without megabyte files
const MAX_POINTS: usize = 512;

fn polyline(values: &[f64], lo: f64, hi: f64) -> String {
    let n = values.len();
    let stride = n.div_ceil(MAX_POINTS).max(1);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut pts = String::new();
    for j in (0..n).step_by(stride).chain(std::iter::once(n - 1)) {
        let x = PAD + (WIDTH - 2.0 * PAD) * j as f64 / (n - 1) as f64;
        let y = HEIGHT - PAD - (HEIGHT - 2.0 * PAD) * (values[j] - lo) / span;
        let _ = write!(pts, "{x:.2},{y:.2} ");
    }
    pts.trim_end().to_string()
}

/// Analytic mode (solid) against `H ψ / e` (dashed).
pub(super) fn mode_plot(title: &str, half_width: f64, analytic: &[f64], spectral: &[f64]) -> String {
    let (lo, hi) = analytic
        .iter()
        .chain(spectral)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * PAD,
        HEIGHT - 2.0 * PAD
    );
    let _ = writeln!(s, r#"<text x="{PAD}" y="24" font-size="14">{title}</text>"#);
    let _ = writeln!(
        s,
        r#"<text x="{PAD}" y="{}" font-size="12">r = -{half_width}</text>"#,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">r = {half_width}</text>"#,
        WIDTH - PAD,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
        polyline(analytic, lo, hi)
    );
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="firebrick" stroke-dasharray="6 4" points="{}"/>"#,
        polyline(spectral, lo, hi)
    );
    s.push_str("</svg>\n");
    s
}
