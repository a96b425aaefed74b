//! Visibility of one chain between two consecutive effective critical
//! vertices: two linear passes over the chain with a constant number of
//! scalars.
//!
//! Pass one finds the window points: for a critical-max start the nearest
//! chain hit of its ray strictly beyond it, mirrored for a critical-min
//! end. Pass two replays the chain, locating the window edges again by
//! distance and copying out the vertices between the two windows.

use crate::driver::OutputSink;
use crate::error::{Error, Result};
use crate::geom::{self, Point};
use crate::polygon::{classify_points, CriticalKind, MeteredPolygon, PolygonInput, TurnRule, WorkspaceMeter};

/// Relative tolerance for re-identifying a window edge in the second pass:
/// both passes recompute the same intersection, but not necessarily in the
/// same evaluation order.
pub const WINDOW_MATCH_TOL: f64 = 1e-9;

/// Relative tolerance below which consecutive output points are merged.
const DEDUP_TOL: f64 = 1e-9;

/// Cyclic boundary range between two consecutive effective critical
/// vertices. `start == end` describes the single full-cycle chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chain {
    pub start: usize,
    pub end: usize,
}

impl Chain {
    /// Number of edges along the chain.
    pub fn edge_count(&self, n: usize) -> usize {
        if self.start == self.end {
            n
        } else {
            (self.end + n - self.start) % n
        }
    }
}

/// Window of a chain: `a` on the ray toward the start vertex, `b` on the
/// ray toward the end vertex, with their distances from the viewpoint.
#[derive(Clone, Copy, Debug)]
pub struct ChainWindow {
    pub a: Point,
    pub b: Point,
    pub min1: f64,
    pub min2: f64,
    /// True when `a` is a window point strictly beyond the start vertex.
    pub start_windowed: bool,
    /// True when `b` is a window point strictly beyond the end vertex.
    pub end_windowed: bool,
}

fn classify_at(scan: &MeteredPolygon<'_>, i: usize) -> Result<CriticalKind> {
    let prev = scan.vertex(scan.prev_index(i));
    let v = scan.vertex(i);
    let next = scan.vertex(scan.next_index(i));
    classify_points(scan.viewpoint(), prev, v, next, TurnRule::ReflexBoth).map_err(|t| match t {
        crate::polygon::AngleTie::WithPrev => Error::DegeneratePosition { i: scan.prev_index(i), j: i },
        crate::polygon::AngleTie::WithNext => Error::DegeneratePosition { i, j: scan.next_index(i) },
    })
}

/// First pass: scans the chain edges once and computes the window points.
pub fn chain_window(input: &PolygonInput, chain: Chain) -> Result<ChainWindow> {
    let meter = WorkspaceMeter::new();
    chain_window_metered(&input.metered(&meter), chain)
}

pub(crate) fn chain_window_metered(scan: &MeteredPolygon<'_>, chain: Chain) -> Result<ChainWindow> {
    let n = scan.len();
    let q = scan.viewpoint();
    let _slots = scan.meter().scalars(16);

    let kind_start = classify_at(scan, chain.start)?;
    let kind_end = classify_at(scan, chain.end)?;
    let p_start = scan.vertex(chain.start);
    let p_end = scan.vertex(chain.end);
    let rho_start = q.distance(p_start);
    let rho_end = q.distance(p_end);

    let want_a = kind_start == CriticalKind::CriticalMax;
    let want_b = kind_end == CriticalKind::CriticalMin;

    let mut best_a: Option<(Point, f64)> = None;
    let mut best_b: Option<(Point, f64)> = None;

    if want_a || want_b {
        let mut v = p_start;
        let mut idx = chain.start;
        for _ in 0..chain.edge_count(n) {
            let next_idx = scan.next_index(idx);
            let v_next = scan.vertex(next_idx);
            if want_a {
                if let Some((p, d)) = geom::ray_hit(q, p_start, (v, v_next))? {
                    if d > rho_start && best_a.is_none_or(|(_, bd)| d < bd) {
                        best_a = Some((p, d));
                    }
                }
            }
            if want_b {
                if let Some((p, d)) = geom::ray_hit(q, p_end, (v, v_next))? {
                    if d > rho_end && best_b.is_none_or(|(_, bd)| d < bd) {
                        best_b = Some((p, d));
                    }
                }
            }
            v = v_next;
            idx = next_idx;
        }
    }

    let (a, min1) = if want_a {
        best_a.ok_or(Error::WindowNotFound { index: chain.start })?
    } else {
        (p_start, rho_start)
    };
    let (b, min2) = if want_b {
        best_b.ok_or(Error::WindowNotFound { index: chain.end })?
    } else {
        (p_end, rho_end)
    };
    Ok(ChainWindow { a, b, min1, min2, start_windowed: want_a, end_windowed: want_b })
}

/// Append-only output writer; merges consecutive near-duplicate points so
/// a window point coinciding with a chain vertex is emitted once.
pub(crate) struct Emitter<'a> {
    sink: &'a mut OutputSink,
    meter: &'a WorkspaceMeter,
    last: Option<Point>,
    scale: f64,
}

impl<'a> Emitter<'a> {
    pub fn new(sink: &'a mut OutputSink, meter: &'a WorkspaceMeter, scale: f64) -> Self {
        Emitter { sink, meter, last: None, scale }
    }

    pub fn push(&mut self, p: Point) {
        if let Some(last) = self.last {
            if last.distance(p) <= DEDUP_TOL * self.scale {
                return;
            }
        }
        self.last = Some(p);
        self.meter.note_output_write();
        self.sink.append(p);
    }
}

fn matches_min(d: f64, min: f64) -> bool {
    (d - min).abs() <= WINDOW_MATCH_TOL * min.max(f64::MIN_POSITIVE)
}

/// Second pass: emits the visible part of the chain in counterclockwise
/// order: the start vertex, its window point if any, the chain vertices
/// between the windows, the end window point if any, the end vertex.
pub fn emit_chain_visibility(input: &PolygonInput, chain: Chain, sink: &mut OutputSink) -> Result<()> {
    let meter = WorkspaceMeter::new();
    let scale = chain_scale(input);
    let mut emitter = Emitter::new(sink, &meter, scale);
    emit_chain_metered(&input.metered(&meter), chain, &mut emitter, true, true)
}

pub(crate) fn chain_scale(input: &PolygonInput) -> f64 {
    let mut m = 1.0f64;
    for v in input.vertices() {
        m = m.max(v.x.abs()).max(v.y.abs());
    }
    m
}

pub(crate) fn emit_chain_metered(
    scan: &MeteredPolygon<'_>,
    chain: Chain,
    emitter: &mut Emitter<'_>,
    emit_leading: bool,
    emit_trailing: bool,
) -> Result<()> {
    let n = scan.len();
    let q = scan.viewpoint();
    let window = chain_window_metered(scan, chain)?;
    let _slots = scan.meter().scalars(16);

    let p_start = scan.vertex(chain.start);
    let p_end = scan.vertex(chain.end);

    if emit_leading {
        emitter.push(p_start);
    }

    let edges = chain.edge_count(n);
    let mut idx = chain.start;
    let mut v = p_start;
    let mut v_next = scan.vertex(scan.next_index(idx));
    let mut used = 0usize;

    // Skip forward to the edge carrying the start window, if any.
    if window.start_windowed {
        loop {
            if let Some((_, d)) = geom::ray_hit(q, p_start, (v, v_next))? {
                if matches_min(d, window.min1) {
                    break;
                }
            }
            used += 1;
            if used >= edges {
                return Err(Error::WindowNotFound { index: chain.start });
            }
            idx = scan.next_index(idx);
            v = v_next;
            v_next = scan.vertex(scan.next_index(idx));
        }
        emitter.push(window.a);
    }

    // Copy vertices until the edge carrying the end window (or the chain
    // end itself when the end vertex is not windowed).
    loop {
        if window.end_windowed {
            if let Some((_, d)) = geom::ray_hit(q, p_end, (v, v_next))? {
                if matches_min(d, window.min2) {
                    break;
                }
            }
        } else if scan.next_index(idx) == chain.end && used + 1 == edges {
            break;
        }
        used += 1;
        if used > edges {
            return Err(Error::WindowNotFound { index: chain.end });
        }
        emitter.push(v_next);
        idx = scan.next_index(idx);
        v = v_next;
        v_next = scan.vertex(scan.next_index(idx));
    }
    if window.end_windowed {
        emitter.push(window.b);
    }
    if emit_trailing {
        emitter.push(p_end);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::driver::OutputSink;
    use approx::assert_relative_eq;

    fn emit(input: &PolygonInput, chain: Chain) -> Vec<Point> {
        let mut sink = OutputSink::new();
        emit_chain_visibility(input, chain, &mut sink).unwrap();
        sink.into_points()
    }

    #[test]
    fn notch_ceiling_chain_has_no_window() {
        let input = corpus::notched_square();
        // (2.5,3) is a critical-min start, (1.5,3) a critical-max end:
        // neither casts a window into this one-edge chain.
        let w = chain_window(&input, Chain { start: 4, end: 5 }).unwrap();
        assert!(!w.start_windowed && !w.end_windowed);
        assert_eq!(w.a, Point::new(2.5, 3.0));
        assert_eq!(w.b, Point::new(1.5, 3.0));
        assert_eq!(emit(&input, Chain { start: 4, end: 5 }), vec![
            Point::new(2.5, 3.0),
            Point::new(1.5, 3.0),
        ]);
    }

    #[test]
    fn long_chain_windows_solved_by_brute_force() {
        let input = corpus::notched_square();
        // The long way round: critical-max start at (1.5,3), critical-min
        // end at (2.5,3). Window points confirmed by scanning all 7 chain
        // edges by hand.
        let w = chain_window(&input, Chain { start: 5, end: 4 }).unwrap();
        assert!(w.start_windowed && w.end_windowed);
        assert_relative_eq!(w.a.x, 1.25, max_relative = 1e-12);
        assert_relative_eq!(w.a.y, 4.0, max_relative = 1e-12);
        assert_relative_eq!(w.b.x, 2.75, max_relative = 1e-12);
        assert_relative_eq!(w.b.y, 4.0, max_relative = 1e-12);

        let got = emit(&input, Chain { start: 5, end: 4 });
        let expect = [
            Point::new(1.5, 3.0),
            Point::new(1.25, 4.0),
            Point::new(0.0, 4.0),
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(4.0, 4.0),
            Point::new(2.75, 4.0),
            Point::new(2.5, 3.0),
        ];
        assert_eq!(got.len(), expect.len());
        for (g, e) in got.iter().zip(expect.iter()) {
            assert_relative_eq!(g.x, e.x, max_relative = 1e-12, epsilon = 1e-12);
            assert_relative_eq!(g.y, e.y, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn fully_visible_chain_copies_verbatim() {
        let input = corpus::convex_regular(8);
        // Convex: no vertex is critical, any synthetic chain copies through.
        let got = emit(&input, Chain { start: 1, end: 5 });
        let expect: Vec<Point> = (1..=5).map(|i| input.vertex(i)).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn emitted_points_are_visible() {
        let input = corpus::notched_square();
        for p in emit(&input, Chain { start: 5, end: 4 }) {
            assert!(crate::oracle::sightline_stays_inside(&input, p, 32).unwrap());
        }
    }

    #[test]
    fn chain_reads_stay_within_two_passes() {
        let input = corpus::notched_square();
        let chain = Chain { start: 5, end: 4 };
        let meter = WorkspaceMeter::new();
        let scale = chain_scale(&input);
        let mut sink = OutputSink::new();
        let mut emitter = Emitter::new(&mut sink, &meter, scale);
        emit_chain_metered(&input.metered(&meter), chain, &mut emitter, true, true).unwrap();
        let snap = meter.snapshot();
        let len = chain.edge_count(input.len()) as u64;
        assert!(snap.vertex_reads <= 2 * len + 12, "reads = {}", snap.vertex_reads);
        assert!(snap.scalar_slots_peak <= 32);
    }
}
