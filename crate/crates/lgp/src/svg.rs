//! Vector plots: the domain outline plus one path per level curve.

use std::fmt::Write;

use lgp_core::{ConvexDomain, Point};

const OUTLINE_SEGMENTS: usize = 720;
const CANVAS: f64 = 800.0;

/// Renders the outline of `domain` and every curve in `curves` (a chord is a
/// two-point curve). Coordinates are flipped so that `y` points up.
pub fn render(domain: &ConvexDomain, curves: &[Vec<Point>]) -> String {
    let (lo, hi) = domain.bounding_box();
    let span = (hi.x - lo.x).max(hi.y - lo.y);
    let margin = 0.05 * span;
    let scale = CANVAS / (span + 2.0 * margin);
    let map = |p: Point| ((p.x - lo.x + margin) * scale, (hi.y - p.y + margin) * scale);
    let width = (hi.x - lo.x + 2.0 * margin) * scale;
    let height = (hi.y - lo.y + 2.0 * margin) * scale;
    let stroke = (0.002 * CANVAS).max(0.5);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let outline = domain.sample_arc(0.0, std::f64::consts::TAU, OUTLINE_SEGMENTS);
    let _ = writeln!(
        out,
        r#"  <path class="boundary" d="{} Z" fill="none" stroke="black" stroke-width="{:.2}"/>"#,
        path_data(outline.iter().map(|&p| map(p))),
        2.0 * stroke
    );
    for c in curves {
        if c.len() < 2 {
            continue;
        }
        let _ = writeln!(
            out,
            r#"  <path class="chord" d="{}" fill="none" stroke="steelblue" stroke-width="{stroke:.2}"/>"#,
            path_data(c.iter().map(|&p| map(p)))
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_chords(domain: &ConvexDomain, chords: &[(Point, Point)]) -> String {
    let curves: Vec<Vec<Point>> = chords.iter().map(|&(a, b)| vec![a, b]).collect();
    render(domain, &curves)
}

fn path_data(points: impl Iterator<Item = (f64, f64)>) -> String {
    let mut d = String::new();
    for (k, (x, y)) in points.enumerate() {
        let _ = write!(d, "{}{x:.3} {y:.3}", if k == 0 { "M" } else { " L" });
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_path_per_chord_plus_boundary() {
        let d = ConvexDomain::ellipse(Point::new(1.0, 0.0), 2.0, 1.0).unwrap();
        let chords = [(Point::new(0.0, 0.5), Point::new(2.0, 0.5)), (Point::new(1.0, -1.0), Point::new(1.0, 1.0))];
        let svg = render_chords(&d, &chords);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let paths: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("path")).collect();
        assert_eq!(paths.len(), 3);
        assert_eq!(paths.iter().filter(|n| n.attribute("class") == Some("chord")).count(), 2);
    }

    #[test]
    fn y_axis_points_up() {
        let d = ConvexDomain::unit_disk();
        let svg = render_chords(&d, &[(Point::new(0.0, 0.9), Point::new(0.0, 0.95))]);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let chord = doc.descendants().find(|n| n.attribute("class") == Some("chord")).unwrap();
        let nums: Vec<f64> = chord
            .attribute("d")
            .unwrap()
            .split(|c: char| c == 'M' || c == 'L' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().unwrap())
            .collect();
        assert!(nums[1] < 0.5 * CANVAS && nums[3] < nums[1]);
    }
}
