//! Debug rendering: input boundary, viewpoint, visibility polygon, flagged
//! critical vertices, and window segments as one SVG document.
//!
//! Formatting and colors are fixed so fixture renders are diffable.

use std::fmt::Write;

use crate::geom::Point;

pub struct SvgScene<'a> {
    pub boundary: &'a [Point],
    pub viewpoint: Point,
    pub visibility: &'a [Point],
    pub critical_markers: &'a [Point],
    pub windows: &'a [(Point, Point)],
}

fn path_data(points: &[Point], flip: impl Fn(Point) -> (f64, f64)) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = flip(*p);
        let _ = write!(d, "{}{x:.4} {y:.4}", if i == 0 { "M" } else { " L" });
    }
    d.push_str(" Z");
    d
}

/// Renders the scene. The view box is the boundary's bounding box with a 5%
/// margin; the y axis is flipped so the drawing matches plane coordinates.
pub fn render(scene: &SvgScene<'_>) -> String {
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for p in scene.boundary {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    }
    let margin = 0.05 * (max_x - min_x).max(max_y - min_y).max(1.0);
    let (w, h) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);
    let flip = |p: Point| (p.x, max_y + min_y - p.y);
    let marker_r = 0.012 * w.max(h);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.4} {:.4} {:.4} {:.4}">"##,
        min_x - margin,
        min_y - margin,
        w,
        h
    );
    let _ = writeln!(
        out,
        r##"  <path class="visibility" d="{}" fill="#9ad18b" fill-opacity="0.55" stroke="#2e7d32" stroke-width="{:.4}"/>"##,
        path_data(scene.visibility, flip),
        0.2 * marker_r
    );
    let _ = writeln!(
        out,
        r##"  <path class="boundary" d="{}" fill="none" stroke="#1a237e" stroke-width="{:.4}"/>"##,
        path_data(scene.boundary, flip),
        0.25 * marker_r
    );
    for (a, b) in scene.windows {
        let (x1, y1) = flip(*a);
        let (x2, y2) = flip(*b);
        let _ = writeln!(
            out,
            r##"  <line class="window" x1="{x1:.4}" y1="{y1:.4}" x2="{x2:.4}" y2="{y2:.4}" stroke="#e65100" stroke-width="{:.4}" stroke-dasharray="{:.4} {:.4}"/>"##,
            0.2 * marker_r,
            0.6 * marker_r,
            0.4 * marker_r
        );
    }
    for p in scene.critical_markers {
        let (cx, cy) = flip(*p);
        let _ = writeln!(
            out,
            r##"  <circle class="critical" cx="{cx:.4}" cy="{cy:.4}" r="{marker_r:.4}" fill="#c62828"/>"##
        );
    }
    let (qx, qy) = flip(scene.viewpoint);
    let _ = writeln!(
        out,
        r##"  <circle class="viewpoint" cx="{qx:.4}" cy="{qy:.4}" r="{marker_r:.4}" fill="#f9a825" stroke="#5d4037" stroke-width="{:.4}"/>"##,
        0.25 * marker_r
    );
    out.push_str("</svg>\n");
    out
}
