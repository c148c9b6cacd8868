//! SVG diagrams of PL maps and boxes. Coordinates are exact upstream and
//! rounded to f64 only here.

use std::fmt::Write as _;
use std::path::Path;

use ordercalc::dynreal::PLMap;
use ordercalc::exact::{rational_to_f64, Rational};

const SIZE: f64 = 480.0;
const PAD: f64 = 20.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

pub struct Scene<'a> {
    pub maps: &'a [PLMap],
    /// Squares [lo, hi]².
    pub boxes: Vec<(Rational, Rational)>,
    pub window: (Rational, Rational),
}

/// Graph points of a PL map over the window, including the endpoints.
fn polyline(m: &PLMap, lo: &Rational, hi: &Rational) -> Vec<(f64, f64)> {
    let mut xs = vec![lo.clone()];
    xs.extend(m.breakpoints().iter().map(|p| p.0.clone()).filter(|x| x > lo && x < hi));
    xs.push(hi.clone());
    xs.iter().map(|x| (rational_to_f64(x), rational_to_f64(&m.apply(x)))).collect()
}

pub fn render(scene: &Scene) -> Result<String, String> {
    if scene.maps.is_empty() && scene.boxes.is_empty() {
        return Err("nothing to draw".into());
    }
    let (lo, hi) = &scene.window;
    if lo >= hi {
        return Err("empty window".into());
    }
    let (a, b) = (rational_to_f64(lo), rational_to_f64(hi));
    let scale = (SIZE - 2.0 * PAD) / (b - a);
    let sx = |x: f64| PAD + (x - a) * scale;
    let sy = |y: f64| SIZE - PAD - (y - a) * scale;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999" stroke-dasharray="4 3"/>"##,
        sx(a),
        sy(a),
        sx(b),
        sy(b)
    );
    for (l, h) in &scene.boxes {
        let (l, h) = (rational_to_f64(l), rational_to_f64(h));
        let _ = writeln!(
            out,
            r##"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#444"/>"##,
            sx(l),
            sy(h),
            (h - l) * scale,
            (h - l) * scale
        );
    }
    for (i, m) in scene.maps.iter().enumerate() {
        let pts: Vec<String> =
            polyline(m, lo, hi).iter().map(|(x, y)| format!("{:.3},{:.3}", sx(*x), sy(*y))).collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            pts.join(" "),
            COLORS[i % COLORS.len()]
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_svg(scene: &Scene, path: &Path) -> Result<(), String> {
    let s = render(scene)?;
    std::fs::write(path, s).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ordercalc::exact::{int, rat};

    #[test]
    fn identity_is_diagonal() {
        let maps = [PLMap::identity()];
        let s = render(&Scene { maps: &maps, boxes: vec![], window: (int(0), int(1)) }).unwrap();
        assert!(s.contains(r#"points="20.000,460.000 460.000,20.000""#));
    }

    #[test]
    fn boxes_are_drawn() {
        let boxes = vec![(rat(-1, 3), rat(1, 3)), (rat(2, 3), rat(4, 3))];
        let s = render(&Scene { maps: &[], boxes, window: (rat(-1, 3), rat(4, 3)) }).unwrap();
        assert_eq!(s.matches("<rect").count(), 3);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(render(&Scene { maps: &[], boxes: vec![], window: (int(0), int(1)) }).is_err());
    }
}
