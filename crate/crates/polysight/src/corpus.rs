//! Fixed fixtures and seeded random instance generators used by tests,
//! benches, and examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{orientation, wrap_angle, Orientation, Point, TAU};
use crate::polygon::{self, PolygonInput};

/// Unit square with a centered viewpoint.
pub fn unit_square() -> PolygonInput {
    PolygonInput::new(
        vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ],
        Point::new(0.51, 0.47),
    )
    .unwrap()
}

/// 4x4 square with a rectangular notch cut into the top edge and the
/// viewpoint below the notch. The two deep corners (2.5,3) and (1.5,3) are
/// the critical vertices; both are visible.
pub fn notched_square() -> PolygonInput {
    PolygonInput::new(
        vec![
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(4.0, 4.0),
            Point::new(2.5, 4.0),
            Point::new(2.5, 3.0),
            Point::new(1.5, 3.0),
            Point::new(1.5, 4.0),
            Point::new(0.0, 4.0),
        ],
        Point::new(2.0, 1.0),
    )
    .unwrap()
}

/// Expected visibility polygon of [`notched_square`], confirmed by the
/// brute-force oracle.
pub fn notched_square_expected() -> Vec<Point> {
    vec![
        Point::new(2.5, 3.0),
        Point::new(1.5, 3.0),
        Point::new(1.25, 4.0),
        Point::new(0.0, 4.0),
        Point::new(0.0, 0.0),
        Point::new(4.0, 0.0),
        Point::new(4.0, 4.0),
        Point::new(2.75, 4.0),
    ]
}

/// Two notches in the top edge of a 12x8 box: the deep notch A is fully
/// visible, while the smaller undercut notch sits inside the angular shadow
/// of A's left window, so its critical vertex must be cleared.
pub fn two_notch() -> PolygonInput {
    PolygonInput::new(
        vec![
            Point::new(0.0, 0.0),
            Point::new(12.0, 0.0),
            Point::new(12.0, 8.0),
            // Notch A.
            Point::new(7.0, 8.0),
            Point::new(7.0, 3.0),
            Point::new(5.0, 3.0),
            Point::new(5.0, 8.0),
            // Hidden notch, carved into the strip occluded by A's left window.
            Point::new(4.5, 8.0),
            Point::new(4.5, 7.5),
            Point::new(3.5, 7.5),
            Point::new(3.5, 8.0),
            Point::new(0.0, 8.0),
        ],
        Point::new(6.0, 1.0),
    )
    .unwrap()
}

/// Three notches: the hidden left notch from [`two_notch`] plus an undercut
/// right notch hidden behind A's right window. The left one is cleared by
/// the forward sweep, the right pair by the backward sweep.
pub fn shadow_gallery() -> PolygonInput {
    PolygonInput::new(
        vec![
            Point::new(0.0, 0.0),
            Point::new(12.0, 0.0),
            Point::new(12.0, 8.0),
            // Hidden undercut notch behind A's right window.
            Point::new(8.0, 8.0),
            Point::new(8.0, 7.0),
            Point::new(7.3, 7.0),
            Point::new(7.6, 8.0),
            // Notch A.
            Point::new(7.0, 8.0),
            Point::new(7.0, 3.0),
            Point::new(5.0, 3.0),
            Point::new(5.0, 8.0),
            // Hidden shallow notch behind A's left window.
            Point::new(4.5, 8.0),
            Point::new(4.5, 7.5),
            Point::new(3.5, 7.5),
            Point::new(3.5, 8.0),
            Point::new(0.0, 8.0),
        ],
        Point::new(6.0, 1.0),
    )
    .unwrap()
}

/// Radial comb: a ring with `t` inward slots. Each slot is undercut (wider
/// at the floor than at the mouth), so both floor corners fold the angle
/// back regardless of where the near-center viewpoint sits: exactly `2t`
/// critical vertices, all visible.
pub fn comb(t: usize) -> PolygonInput {
    comb_sized(t, 6 * t)
}

/// Comb with the ring arcs subdivided to reach roughly `n` vertices while
/// keeping the same `2t` critical vertices.
pub fn comb_sized(t: usize, n: usize) -> PolygonInput {
    assert!(t >= 1);
    let radius = 10.0;
    let floor = 7.0; // corridor depth 3
    let pitch = TAU / t as f64;
    let mouth_half = (0.10 * pitch).min(0.18);
    let floor_half = (0.22 * pitch).min(0.40);
    let offset = 0.4; // keeps vertex angles away from symmetric ties

    let arc_points = (n.saturating_sub(4 * t) / t).max(2);
    let mut vertices = Vec::with_capacity(t * (4 + arc_points));
    for k in 0..t {
        let center = offset + pitch * k as f64;
        let on_ring = |a: f64| Point::new(radius * a.cos(), radius * a.sin());
        let on_floor = |a: f64| Point::new(floor * a.cos(), floor * a.sin());
        vertices.push(on_ring(center - mouth_half));
        vertices.push(on_floor(center - floor_half));
        vertices.push(on_floor(center + floor_half));
        vertices.push(on_ring(center + mouth_half));
        // Ring arc to the next slot.
        let arc_start = center + mouth_half;
        let arc_end = center + pitch - mouth_half;
        let step = (arc_end - arc_start) / (arc_points + 1) as f64;
        for j in 1..=arc_points {
            vertices.push(on_ring(arc_start + step * j as f64));
        }
    }
    PolygonInput::new(vertices, Point::new(0.0137, 0.0071)).unwrap()
}

/// Rectangular spiral corridor with the viewpoint in the innermost stretch.
/// Only the corner opening into the next winding is critical, so the
/// pipeline runs its single-chain path. `turns` is 2 or 3.
pub fn spiral(turns: usize) -> PolygonInput {
    match turns {
        2 => PolygonInput::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(12.0, 0.0),
                Point::new(12.0, 12.0),
                Point::new(0.0, 12.0),
                Point::new(0.0, 4.0),
                Point::new(8.0, 4.0),
                Point::new(8.0, 8.0),
                Point::new(4.0, 8.0),
                Point::new(4.0, 7.0),
                Point::new(7.0, 7.0),
                Point::new(7.0, 5.0),
                Point::new(1.0, 5.0),
                Point::new(1.0, 11.0),
                Point::new(11.0, 11.0),
                Point::new(11.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            Point::new(5.03, 7.51),
        )
        .unwrap(),
        3 => PolygonInput::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(12.0, 0.0),
                Point::new(12.0, 12.0),
                Point::new(0.0, 12.0),
                Point::new(0.0, 3.0),
                Point::new(9.0, 3.0),
                Point::new(9.0, 9.0),
                Point::new(3.0, 9.0),
                Point::new(3.0, 6.0),
                Point::new(6.0, 6.0),
                Point::new(6.0, 7.0),
                Point::new(4.0, 7.0),
                Point::new(4.0, 8.0),
                Point::new(8.0, 8.0),
                Point::new(8.0, 4.0),
                Point::new(1.0, 4.0),
                Point::new(1.0, 11.0),
                Point::new(11.0, 11.0),
                Point::new(11.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            Point::new(4.79, 6.53),
        )
        .unwrap(),
        other => panic!("spiral fixture supports 2 or 3 turns, got {other}"),
    }
}

/// Regular-ish convex polygon about a near-center viewpoint.
pub fn convex_regular(n: usize) -> PolygonInput {
    assert!(n >= 3);
    let rot = 0.19; // lifts mirror symmetries that would tie angles
    let vertices = (0..n)
        .map(|i| {
            let a = rot + TAU * i as f64 / n as f64;
            Point::new(10.0 * a.cos(), 10.0 * a.sin())
        })
        .collect();
    PolygonInput::new(vertices, Point::new(0.0231, -0.0173)).unwrap()
}

/// The fixed corpus; every instance passes strict validation.
pub fn fixed_corpus() -> Vec<(&'static str, PolygonInput)> {
    let mut v: Vec<(&'static str, PolygonInput)> = vec![
        ("unit_square", unit_square()),
        ("notched_square", notched_square()),
        ("two_notch", two_notch()),
        ("shadow_gallery", shadow_gallery()),
        ("spiral2", spiral(2)),
        ("spiral3", spiral(3)),
        ("convex17", convex_regular(17)),
    ];
    for t in 1..=8 {
        v.push(("comb", comb(t)));
    }
    v
}

fn segments_cross(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
    use Orientation::*;
    let d1 = orientation(b1, b2, a1);
    let d2 = orientation(b1, b2, a2);
    let d3 = orientation(a1, a2, b1);
    let d4 = orientation(a1, a2, b2);
    if d1 != d2 && d3 != d4 && d1 != Collinear && d2 != Collinear && d3 != Collinear && d4 != Collinear {
        return true;
    }
    let on = |p: Point, s1: Point, s2: Point| {
        orientation(s1, s2, p) == Collinear
            && p.x >= s1.x.min(s2.x)
            && p.x <= s1.x.max(s2.x)
            && p.y >= s1.y.min(s2.y)
            && p.y <= s1.y.max(s2.y)
    };
    on(a1, b1, b2) || on(a2, b1, b2) || on(b1, a1, a2) || on(b2, a1, a2)
}

fn orient_ccw(points: &mut [Point]) {
    let n = points.len();
    let mut sum = 0.0;
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    if sum < 0.0 {
        points.reverse();
    }
}

/// Random simple polygon: `n` random points untangled by repeated 2-opt
/// segment reversal, oriented counterclockwise.
pub fn random_simple_polygon(n: usize, seed: u64) -> Result<Vec<Point>> {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..8 {
        let mut points: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
            .collect();
        let budget = 16 * n * n + 1000;
        for _ in 0..budget {
            let mut crossing = None;
            'scan: for i in 0..n {
                for j in i + 1..n {
                    if j == i || (i + 1) % n == j || (j + 1) % n == i {
                        continue;
                    }
                    let (a1, a2) = (points[i], points[(i + 1) % n]);
                    let (b1, b2) = (points[j], points[(j + 1) % n]);
                    if segments_cross(a1, a2, b1, b2) {
                        crossing = Some((i, j));
                        break 'scan;
                    }
                }
            }
            match crossing {
                None => {
                    orient_ccw(&mut points);
                    return Ok(points);
                }
                Some((i, j)) => points[i + 1..=j].reverse(),
            }
        }
        // Swap budget exhausted; retry with fresh points.
        continue 'attempt;
    }
    Err(Error::GenerationTimeout)
}

/// Samples an interior point in general position: angular separation of all
/// vertices at least `min_sep` radians and no edge collinear with it.
pub fn random_interior_point(poly: &[Point], seed: u64, min_sep: f64) -> Result<Point> {
    let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in poly {
        lo_x = lo_x.min(p.x);
        hi_x = hi_x.max(p.x);
        lo_y = lo_y.min(p.y);
        hi_y = hi_y.max(p.y);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    'sample: for _ in 0..4000 {
        let q = Point::new(rng.gen_range(lo_x..hi_x), rng.gen_range(lo_y..hi_y));
        let probe = match PolygonInput::new(poly.to_vec(), q) {
            Ok(p) => p,
            Err(_) => continue,
        };
        match polygon::point_in_polygon(&probe, q) {
            Ok(true) => {}
            _ => continue,
        }
        let mut angles: Vec<f64> = Vec::with_capacity(poly.len());
        for v in poly {
            let a = wrap_angle((v.y - q.y).atan2(v.x - q.x));
            angles.push(a);
        }
        angles.sort_by(f64::total_cmp);
        for w in angles.windows(2) {
            if w[1] - w[0] < min_sep {
                continue 'sample;
            }
        }
        if angles[0] + TAU - angles[angles.len() - 1] < min_sep {
            continue 'sample;
        }
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            if orientation(a, b, q) == Orientation::Collinear {
                continue 'sample;
            }
        }
        return Ok(q);
    }
    Err(Error::GenerationTimeout)
}

/// Random simple polygon plus a general-position interior viewpoint; the
/// result passes strict validation.
pub fn random_instance(n: usize, seed: u64) -> Result<PolygonInput> {
    let points = random_simple_polygon(n, seed)?;
    let q = random_interior_point(&points, seed, 1e-6)?;
    let input = PolygonInput::new(points, q)?;
    polygon::validate(&input, true)?;
    Ok(input)
}

/// Random convex polygon (hull of a random cloud) with an interior viewpoint.
pub fn random_convex_instance(n: usize, seed: u64) -> Result<PolygonInput> {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x5851_f42d_4c95_7f2d));
    for _ in 0..64 {
        let cloud: Vec<Point> = (0..n.max(8))
            .map(|_| Point::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0)))
            .collect();
        let hull = convex_hull(&cloud);
        if hull.len() < 3 {
            continue;
        }
        let q_seed: u64 = rng.gen();
        let Ok(q) = random_interior_point(&hull, q_seed, 1e-6) else { continue };
        let input = PolygonInput::new(hull, q)?;
        if polygon::validate(&input, true).is_ok() {
            return Ok(input);
        }
    }
    Err(Error::GenerationTimeout)
}

/// Monotone-chain convex hull with strict turns, counterclockwise.
fn convex_hull(cloud: &[Point]) -> Vec<Point> {
    let mut pts = cloud.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p)
                != Orientation::CounterclockwiseTurn
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p)
                != Orientation::CounterclockwiseTurn
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
