//! Planar kernel: exact orientation, polar coordinates about a viewpoint,
//! ray/segment intersection, and shadow points.
//!
//! Orientation signs are exact (adaptive-precision determinant). Everything
//! downstream is combinatorial on those signs, so a rounding flip here would
//! corrupt the flag array; coordinates of constructed points are ordinary
//! `f64` and carry the usual rounding.

use crate::error::{Error, Result};

pub const TAU: f64 = std::f64::consts::TAU;
pub const PI: f64 = std::f64::consts::PI;

/// A point in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Polar coordinates of a point as seen from the viewpoint.
///
/// `theta` is the angle of the ray viewpoint -> point against the positive
/// x-axis, normalized to `[0, 2π)`; `rho` is the Euclidean distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarCoord {
    pub theta: f64,
    pub rho: f64,
}

/// Turn direction of the triple `v1 -> v2 -> v3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    CounterclockwiseTurn,
    ClockwiseTurn,
    Collinear,
}

/// Exact sign of the determinant of `(v2 - v1, v3 - v2)`.
///
/// `CounterclockwiseTurn` iff `v3` lies strictly left of the directed line
/// `v1 -> v2`, `ClockwiseTurn` iff strictly right.
pub fn orientation(v1: Point, v2: Point, v3: Point) -> Orientation {
    let det = robust::orient2d(
        robust::Coord { x: v1.x, y: v1.y },
        robust::Coord { x: v2.x, y: v2.y },
        robust::Coord { x: v3.x, y: v3.y },
    );
    if det > 0.0 {
        Orientation::CounterclockwiseTurn
    } else if det < 0.0 {
        Orientation::ClockwiseTurn
    } else {
        Orientation::Collinear
    }
}

/// Polar coordinates of `p` about `q`.
pub fn polar_of(q: Point, p: Point) -> Result<PolarCoord> {
    if p == q {
        return Err(Error::DegenerateInput("point coincides with viewpoint"));
    }
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    Ok(PolarCoord {
        theta: wrap_angle(dy.atan2(dx)),
        rho: dx.hypot(dy),
    })
}

/// Normalizes an angle into `[0, 2π)`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed angular step from `from` to `to`, wrapped into `(-π, π]`.
///
/// This is the local unwinding rule: the successive angle is shifted by
/// `±2π` to the representative nearest the previous one.
pub fn angle_delta(from: f64, to: f64) -> f64 {
    let d = (to - from).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

fn cross(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    ax * by - ay * bx
}

fn sign_of(o: Orientation) -> i32 {
    match o {
        Orientation::CounterclockwiseTurn => 1,
        Orientation::ClockwiseTurn => -1,
        Orientation::Collinear => 0,
    }
}

/// Intersection of the open ray `{q + t(through - q), t > 0}` with the
/// closed segment, together with its distance from `q`.
///
/// Hit/no-hit decisions are made on exact orientation signs; only the hit
/// coordinates are rounded. A segment lying on the ray's supporting line
/// with any part ahead of `q` has no unique intersection and is rejected.
pub fn ray_hit(q: Point, through: Point, seg: (Point, Point)) -> Result<Option<(Point, f64)>> {
    if through == q {
        return Err(Error::DegenerateInput("ray direction point coincides with origin"));
    }
    let (a, b) = seg;
    let side_a = orientation(q, through, a);
    let side_b = orientation(q, through, b);

    if side_a == Orientation::Collinear && side_b == Orientation::Collinear {
        // Segment on the ray line. Ahead of q means t > 0 for some point.
        let dx = through.x - q.x;
        let dy = through.y - q.y;
        let ahead = |p: Point| (p.x - q.x) * dx + (p.y - q.y) * dy > 0.0;
        if ahead(a) || ahead(b) {
            return Err(Error::DegenerateInput("segment collinear with ray"));
        }
        return Ok(None);
    }
    if side_a == side_b {
        // Both endpoints strictly on the same side of the ray line.
        return Ok(None);
    }

    // The segment's supporting line crosses the ray line at one point.
    // Forward test: crossing parameter t > 0 iff sign(orient(q,a,b))
    // agrees with sign(side_b - side_a); t = 0 iff q is on line ab.
    let s1 = sign_of(orientation(q, a, b));
    let s2 = sign_of(side_b) - sign_of(side_a); // nonzero here
    if s1 == 0 || s1 * s2 < 0 {
        return Ok(None);
    }

    let point = if side_a == Orientation::Collinear {
        a
    } else if side_b == Orientation::Collinear {
        b
    } else {
        let dx = through.x - q.x;
        let dy = through.y - q.y;
        let ex = b.x - a.x;
        let ey = b.y - a.y;
        let denom = cross(dx, dy, ex, ey);
        let u = (cross(a.x - q.x, a.y - q.y, dx, dy) / denom).clamp(0.0, 1.0);
        Point::new(a.x + u * ex, a.y + u * ey)
    };
    Ok(Some((point, q.distance(point))))
}

/// First boundary point struck by the ray `q -> v` strictly beyond `v`:
/// the nearest `ray_hit` over `edges` with distance greater than `|qv|`.
pub fn shadow_point<I>(q: Point, v: Point, edges: I) -> Result<Option<(Point, f64)>>
where
    I: IntoIterator<Item = (Point, Point)>,
{
    let base = q.distance(v);
    let mut best: Option<(Point, f64)> = None;
    for edge in edges {
        if let Some((p, d)) = ray_hit(q, v, edge)? {
            if d <= base {
                continue;
            }
            match best {
                None => best = Some((p, d)),
                Some((bp, bd)) => {
                    if d < bd {
                        best = Some((p, d));
                    } else if d == bd && p != bp {
                        // Two distinct first hits at the same distance.
                        return Err(Error::DegenerateInput("ambiguous shadow point"));
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Nearest `ray_hit` of the ray `q -> through` over `edges` at any positive
/// distance. Used to order two conflicting critical vertices.
pub fn nearest_ray_hit<I>(q: Point, through: Point, edges: I) -> Result<Option<(Point, f64)>>
where
    I: IntoIterator<Item = (Point, Point)>,
{
    let mut best: Option<(Point, f64)> = None;
    for edge in edges {
        if let Some((p, d)) = ray_hit(q, through, edge)? {
            match best {
                None => best = Some((p, d)),
                Some((_, bd)) if d < bd => best = Some((p, d)),
                _ => {}
            }
        }
    }
    Ok(best)
}
