//! Independent ground truth: quadratic brute-force visibility polygon,
//! per-vertex visibility tests, and cyclic polygon comparison.
//!
//! Nothing here shares sweep or chain logic with the constrained engine;
//! only the geometric primitives are common. Agreement between the two is
//! therefore evidence, not tautology.

use crate::error::{Error, Result};
use crate::geom::{self, orientation, wrap_angle, Orientation, Point, TAU};
use crate::polygon::{classify_vertex, CriticalKind, PolygonInput};

/// True iff the open segment from the viewpoint to `p` crosses no boundary
/// edge. Edges incident to `p` touch only at `p` and do not block, and the
/// boundary blocks at a vertex on the sight line only when its two incident
/// edges straddle the line (a grazed reflex corner lets the sight pass).
pub fn visible_from(input: &PolygonInput, p: Point) -> Result<bool> {
    visible_from_by(input.viewpoint(), p, input.len(), |i| input.vertex(i))
}

/// Core of [`visible_from`] over an arbitrary vertex accessor, so metered
/// callers can account their reads. One rolling pass, one read per vertex.
pub(crate) fn visible_from_by(
    q: Point,
    p: Point,
    n: usize,
    vertex: impl Fn(usize) -> Point,
) -> Result<bool> {
    use Orientation::*;
    if p == q {
        return Ok(true);
    }
    let strictly_between = |x: Point| {
        let d1 = (x.x - q.x) * (p.x - q.x) + (x.y - q.y) * (p.y - q.y);
        let d2 = (x.x - p.x) * (q.x - p.x) + (x.y - p.y) * (q.y - p.y);
        d1 > 0.0 && d2 > 0.0
    };
    let covers = |x: Point, y: Point, z: Point| {
        let d1 = (z.x - x.x) * (y.x - x.x) + (z.y - x.y) * (y.y - x.y);
        let d2 = (z.x - y.x) * (x.x - y.x) + (z.y - y.y) * (x.y - y.y);
        d1 >= 0.0 && d2 >= 0.0
    };

    let mut prev = vertex(n - 1);
    let mut cur = vertex(0);
    let mut next = vertex(1 % n);
    for i in 0..n {
        // The boundary blocks at a vertex on the open sight segment only
        // when its incident edges straddle the line.
        if cur != p && orientation(q, p, cur) == Collinear && strictly_between(cur) {
            let sa = orientation(q, p, prev);
            let sb = orientation(q, p, next);
            if sa == Collinear || sb == Collinear {
                return Err(Error::DegenerateInput("sight line overlaps an edge"));
            }
            if sa != sb {
                return Ok(false);
            }
        }
        // Proper interior crossing of the edge (cur, next).
        let sa = orientation(q, p, cur);
        let sb = orientation(q, p, next);
        if sa == Collinear && sb == Collinear {
            // Edge on the sight line: any overlap with the open segment is
            // degenerate; disjoint collinear pieces do not block.
            if strictly_between(cur) || strictly_between(next) || (covers(cur, next, q) && covers(cur, next, p)) {
                return Err(Error::DegenerateInput("sight line overlaps an edge"));
            }
        } else if sa != sb && sa != Collinear && sb != Collinear {
            let sq = orientation(cur, next, q);
            let sp = orientation(cur, next, p);
            if sq != sp && sq != Collinear && sp != Collinear {
                return Ok(false);
            }
        }
        prev = cur;
        cur = next;
        next = vertex((i + 2) % n);
    }
    Ok(true)
}

/// Diagnostic visibility for constructed points (window endpoints): their
/// sight line legitimately grazes a reflex corner and the constructed
/// coordinates carry rounding, so the exact predicate is ill-posed there.
/// Samples the open sight segment instead, skipping a small clearance
/// around each vertex, and checks every sample stays inside the polygon.
pub fn sightline_stays_inside(input: &PolygonInput, p: Point, samples: usize) -> Result<bool> {
    let q = input.viewpoint();
    let mut scale = 1.0f64;
    for v in input.vertices() {
        scale = scale.max(v.x.abs()).max(v.y.abs());
    }
    let clearance = 1e-7 * scale;
    for k in 1..=samples {
        let t = k as f64 / (samples + 1) as f64;
        let x = Point::new(q.x + (p.x - q.x) * t, q.y + (p.y - q.y) * t);
        if (0..input.len()).any(|i| input.vertex(i).distance(x) <= clearance) {
            continue;
        }
        match crate::polygon::point_in_polygon(input, x) {
            Ok(true) => {}
            Ok(false) => return Ok(false),
            Err(_) => {} // exactly on an edge: a graze, not a crossing
        }
    }
    Ok(true)
}

/// Indices of the critical vertices that are visible from the viewpoint.
pub fn visible_critical_indices(input: &PolygonInput) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..input.len() {
        if classify_vertex(input, i)?.is_critical() && visible_from(input, input.vertex(i))? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Brute-force visibility polygon by angular ray casting: every visible
/// vertex appears in angular order, and visible critical vertices carry
/// their shadow point on the occluding side. Quadratic time, unbounded
/// workspace.
pub fn brute_force_visibility(input: &PolygonInput) -> Result<Vec<Point>> {
    let q = input.viewpoint();
    let n = input.len();
    let mut order: Vec<(f64, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        order.push((geom::polar_of(q, input.vertex(i))?.theta, i));
    }
    order.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut out: Vec<Point> = Vec::new();
    for &(_, i) in &order {
        let v = input.vertex(i);
        if !visible_from(input, v)? {
            continue;
        }
        match classify_vertex(input, i)? {
            CriticalKind::CriticalMin => {
                // The occluded pocket precedes the vertex in boundary order;
                // its far window point comes first along the output.
                let (s, _) = geom::shadow_point(q, v, input.edges())?
                    .ok_or(Error::DegenerateInput("visible critical vertex without shadow"))?;
                out.push(s);
                out.push(v);
            }
            CriticalKind::CriticalMax => {
                let (s, _) = geom::shadow_point(q, v, input.edges())?
                    .ok_or(Error::DegenerateInput("visible critical vertex without shadow"))?;
                out.push(v);
                out.push(s);
            }
            CriticalKind::NotCritical => out.push(v),
        }
    }
    Ok(out)
}

fn diameter(points: &[Point]) -> f64 {
    let mut d = 0.0f64;
    for (k, a) in points.iter().enumerate() {
        for b in &points[k + 1..] {
            d = d.max(a.distance(*b));
        }
    }
    d
}

/// Removes consecutive points whose removal changes the polygon by less
/// than the collinearity tolerance: the middle of any triple spanning a
/// triangle of area below `1e-12 * diameter^2`.
fn strip_collinear(points: &[Point], diam: f64) -> Vec<Point> {
    let mut pts = points.to_vec();
    let area_tol = 1e-12 * diam * diam;
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut removed = false;
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let prev = pts[(i + n - 1) % n];
            let cur = pts[i];
            let next = pts[(i + 1) % n];
            let area2 = ((cur.x - prev.x) * (next.y - prev.y)
                - (cur.y - prev.y) * (next.x - prev.x))
                .abs();
            if !removed && area2 <= 2.0 * area_tol {
                removed = true; // drop one per round to keep neighbors fresh
                continue;
            }
            keep.push(cur);
        }
        if !removed {
            return pts;
        }
        pts = keep;
    }
}

/// True iff `a` and `b` describe the same polygon up to cyclic rotation,
/// after removing consecutive-collinear points, with pointwise distance at
/// most `tol` times the larger diameter.
pub fn compare_cyclic(a: &[Point], b: &[Point], tol: f64) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.is_empty() && b.is_empty();
    }
    let diam = diameter(a).max(diameter(b)).max(f64::MIN_POSITIVE);
    let pa = strip_collinear(a, diam);
    let pb = strip_collinear(b, diam);
    if pa.len() != pb.len() {
        return false;
    }
    let m = pa.len();
    let dist_tol = tol * diam;
    'rot: for r in 0..m {
        for k in 0..m {
            if pa[k].distance(pb[(k + r) % m]) > dist_tol {
                continue 'rot;
            }
        }
        return true;
    }
    false
}

/// Signed area of a polygon (positive for counterclockwise order).
pub fn signed_area(points: &[Point]) -> f64 {
    let n = points.len();
    let mut sum = 0.0;
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    sum / 2.0
}

/// The output of the engine and the oracle must wind once counterclockwise
/// around the viewpoint; checked via the angular turns of the sequence.
pub fn winds_once_ccw(points: &[Point], q: Point) -> bool {
    if points.len() < 3 {
        return false;
    }
    let mut total = 0.0;
    for i in 0..points.len() {
        let a = points[i];
        let b = points[(i + 1) % points.len()];
        let ta = wrap_angle((a.y - q.y).atan2(a.x - q.x));
        let tb = wrap_angle((b.y - q.y).atan2(b.x - q.x));
        total += geom::angle_delta(ta, tb);
    }
    (total - TAU).abs() < 1e-6
}
