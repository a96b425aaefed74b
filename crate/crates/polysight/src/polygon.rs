//! Input model and classification.
//!
//! The input is a read-only vertex array in counterclockwise order plus an
//! interior viewpoint. The algorithm side accesses vertices only through
//! [`MeteredPolygon`], which counts every element access, so the resource
//! claims can be checked rather than trusted.

use std::cell::Cell;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{self, angle_delta, orientation, Orientation, Point};

/// Read-only polygon plus viewpoint.
///
/// Construction performs only structural checks; run [`validate`] for the
/// model invariants (counterclockwise order, interior viewpoint, and in
/// strict mode simplicity and general position).
#[derive(Clone, Debug)]
pub struct PolygonInput {
    vertices: Vec<Point>,
    viewpoint: Point,
}

impl PolygonInput {
    pub fn new(vertices: Vec<Point>, viewpoint: Point) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput("polygon needs at least 3 vertices"));
        }
        if !viewpoint.is_finite() {
            return Err(Error::DegenerateInput("viewpoint is not finite"));
        }
        for v in &vertices {
            if !v.is_finite() {
                return Err(Error::DegenerateInput("vertex is not finite"));
            }
            if *v == viewpoint {
                return Err(Error::DegenerateInput("vertex coincides with viewpoint"));
            }
        }
        Ok(PolygonInput { vertices, viewpoint })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn viewpoint(&self) -> Point {
        self.viewpoint
    }

    /// Direct element access for validation and oracle code. The metered
    /// algorithm path goes through [`PolygonInput::metered`] instead.
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn next_index(&self, i: usize) -> usize {
        if i + 1 == self.vertices.len() {
            0
        } else {
            i + 1
        }
    }

    pub fn prev_index(&self, i: usize) -> usize {
        if i == 0 {
            self.vertices.len() - 1
        } else {
            i - 1
        }
    }

    /// Edge starting at vertex `i`.
    pub fn edge(&self, i: usize) -> (Point, Point) {
        (self.vertex(i), self.vertex(self.next_index(i)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn metered<'a>(&'a self, meter: &'a WorkspaceMeter) -> MeteredPolygon<'a> {
        MeteredPolygon { input: self, meter }
    }
}

/// Counters proving the resource bounds: flag bits, live word-sized
/// scalars (with peak), input-array reads, and output appends.
#[derive(Debug, Default)]
pub struct WorkspaceMeter {
    vertex_reads: Cell<u64>,
    output_writes: Cell<u64>,
    flag_bits: Cell<u64>,
    scalars_live: Cell<u64>,
    scalars_peak: Cell<u64>,
}

impl WorkspaceMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn note_vertex_read(&self) {
        self.vertex_reads.set(self.vertex_reads.get() + 1);
    }

    pub fn note_output_write(&self) {
        self.output_writes.set(self.output_writes.get() + 1);
    }

    pub fn allocate_flag_bits(&self, bits: u64) {
        self.flag_bits.set(self.flag_bits.get().max(bits));
    }

    /// Declares `n` word-sized scalars live for the returned scope.
    pub fn scalars(&self, n: u64) -> ScalarScope<'_> {
        let live = self.scalars_live.get() + n;
        self.scalars_live.set(live);
        if live > self.scalars_peak.get() {
            self.scalars_peak.set(live);
        }
        ScalarScope { meter: self, n }
    }

    pub fn snapshot(&self) -> MeterSnapshot {
        MeterSnapshot {
            flag_bits: self.flag_bits.get(),
            scalar_slots_peak: self.scalars_peak.get(),
            vertex_reads: self.vertex_reads.get(),
            output_writes: self.output_writes.get(),
        }
    }
}

/// RAII guard for live scalar accounting.
pub struct ScalarScope<'a> {
    meter: &'a WorkspaceMeter,
    n: u64,
}

impl Drop for ScalarScope<'_> {
    fn drop(&mut self) {
        let live = self.meter.scalars_live.get();
        self.meter.scalars_live.set(live.saturating_sub(self.n));
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MeterSnapshot {
    pub flag_bits: u64,
    pub scalar_slots_peak: u64,
    pub vertex_reads: u64,
    pub output_writes: u64,
}

/// Read-counting view of a [`PolygonInput`]. One computation owns one meter.
#[derive(Clone, Copy)]
pub struct MeteredPolygon<'a> {
    input: &'a PolygonInput,
    meter: &'a WorkspaceMeter,
}

impl<'a> MeteredPolygon<'a> {
    pub fn len(&self) -> usize {
        self.input.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn viewpoint(&self) -> Point {
        self.input.viewpoint()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.meter.note_vertex_read();
        self.input.vertex(i)
    }

    pub fn next_index(&self, i: usize) -> usize {
        self.input.next_index(i)
    }

    pub fn prev_index(&self, i: usize) -> usize {
        self.input.prev_index(i)
    }

    pub fn meter(&self) -> &'a WorkspaceMeter {
        self.meter
    }

    pub fn input(&self) -> &'a PolygonInput {
        self.input
    }
}

/// Classification of a vertex by the polar-angle profile about the viewpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalKind {
    /// Local maximum of the angle with a reflex turn.
    CriticalMax,
    /// Local minimum of the angle with a reflex turn.
    CriticalMin,
    NotCritical,
}

impl CriticalKind {
    pub fn is_critical(self) -> bool {
        !matches!(self, CriticalKind::NotCritical)
    }
}

/// Turn convention for critical minima.
///
/// `ReflexBoth` requires a clockwise (reflex) turn for both critical kinds;
/// it is the convention the rest of the pipeline is built on, because only
/// reflex corners cast occlusion windows. `PaperLiteral` instead asks for a
/// counterclockwise turn at critical minima and is kept for comparison: on
/// the notched-square fixture it misses the occluding reflex corner and
/// flags an occluded convex one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TurnRule {
    #[default]
    ReflexBoth,
    PaperLiteral,
}

pub(crate) enum AngleTie {
    WithPrev,
    WithNext,
}

/// Pure classification from the three points around a vertex.
pub(crate) fn classify_points(
    q: Point,
    prev: Point,
    v: Point,
    next: Point,
    rule: TurnRule,
) -> std::result::Result<CriticalKind, AngleTie> {
    let t_prev = geom::polar_of(q, prev).map_err(|_| AngleTie::WithPrev)?.theta;
    let t_v = geom::polar_of(q, v).map_err(|_| AngleTie::WithPrev)?.theta;
    let t_next = geom::polar_of(q, next).map_err(|_| AngleTie::WithNext)?.theta;
    let d1 = angle_delta(t_prev, t_v);
    let d2 = angle_delta(t_v, t_next);
    if d1 == 0.0 || d1 == geom::PI {
        return Err(AngleTie::WithPrev);
    }
    if d2 == 0.0 || d2 == geom::PI {
        return Err(AngleTie::WithNext);
    }
    let turn = orientation(prev, v, next);
    let kind = if d1 > 0.0 && d2 < 0.0 {
        // Local maximum.
        match turn {
            Orientation::ClockwiseTurn => CriticalKind::CriticalMax,
            _ => CriticalKind::NotCritical,
        }
    } else if d1 < 0.0 && d2 > 0.0 {
        // Local minimum.
        let wanted = match rule {
            TurnRule::ReflexBoth => Orientation::ClockwiseTurn,
            TurnRule::PaperLiteral => Orientation::CounterclockwiseTurn,
        };
        if turn == wanted {
            CriticalKind::CriticalMin
        } else {
            CriticalKind::NotCritical
        }
    } else {
        CriticalKind::NotCritical
    };
    Ok(kind)
}

fn tie_error(input: &PolygonInput, i: usize, tie: AngleTie) -> Error {
    match tie {
        AngleTie::WithPrev => Error::DegeneratePosition { i: input.prev_index(i), j: i },
        AngleTie::WithNext => Error::DegeneratePosition { i, j: input.next_index(i) },
    }
}

/// Classifies vertex `i` under the default reflex-both convention.
pub fn classify_vertex(input: &PolygonInput, i: usize) -> Result<CriticalKind> {
    classify_vertex_with(input, i, TurnRule::ReflexBoth)
}

pub fn classify_vertex_with(input: &PolygonInput, i: usize, rule: TurnRule) -> Result<CriticalKind> {
    let prev = input.vertex(input.prev_index(i));
    let v = input.vertex(i);
    let next = input.vertex(input.next_index(i));
    classify_points(input.viewpoint(), prev, v, next, rule).map_err(|t| tie_error(input, i, t))
}

/// Result of the single classification pass: critical count and the
/// extreme-angle vertices used as sweep origins.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ScanSummary {
    pub critical_total: usize,
    pub min_theta_index: usize,
    pub max_theta_index: usize,
}

/// One linear pass: classifies every vertex with a rolling window and finds
/// the minimum- and maximum-angle vertices (ties broken by smaller distance,
/// then smaller index).
pub(crate) fn scan_summary(scan: &MeteredPolygon<'_>) -> Result<ScanSummary> {
    let n = scan.len();
    let q = scan.viewpoint();
    let _slots = scan.meter().scalars(16);

    let mut prev = scan.vertex(n - 1);
    let mut cur = scan.vertex(0);
    let mut next = scan.vertex(1);

    let mut total = 0usize;
    let mut best_min: Option<(f64, f64, usize)> = None;
    let mut best_max: Option<(f64, f64, usize)> = None;

    for i in 0..n {
        let polar = geom::polar_of(q, cur).map_err(|_| Error::DegenerateInput("vertex at viewpoint"))?;
        let key = (polar.theta, polar.rho, i);
        let better_min = match best_min {
            None => true,
            Some(b) => key.0 < b.0 || (key.0 == b.0 && (key.1 < b.1 || (key.1 == b.1 && i < b.2))),
        };
        if better_min {
            best_min = Some(key);
        }
        let better_max = match best_max {
            None => true,
            Some(b) => key.0 > b.0 || (key.0 == b.0 && (key.1 < b.1 || (key.1 == b.1 && i < b.2))),
        };
        if better_max {
            best_max = Some(key);
        }

        if classify_points(q, prev, cur, next, TurnRule::ReflexBoth)
            .map_err(|t| tie_error(scan.input(), i, t))?
            .is_critical()
        {
            total += 1;
        }

        prev = cur;
        cur = next;
        next = scan.vertex(scan.next_index(scan.next_index(i)));
    }

    Ok(ScanSummary {
        critical_total: total,
        min_theta_index: best_min.unwrap().2,
        max_theta_index: best_max.unwrap().2,
    })
}

/// Streaming three-vertex window over the boundary, keeping a running
/// locally-unwound angle. One input read per advance.
pub(crate) struct RollingWindow<'a> {
    scan: MeteredPolygon<'a>,
    backward: bool,
    idx: usize,
    p_before: Point,
    p_cur: Point,
    p_after: Point,
    raw: f64,
    th: f64,
}

impl<'a> RollingWindow<'a> {
    pub fn new_forward(scan: MeteredPolygon<'a>, center: usize) -> Result<Self> {
        Self::new(scan, center, false)
    }

    pub fn new_backward(scan: MeteredPolygon<'a>, center: usize) -> Result<Self> {
        Self::new(scan, center, true)
    }

    fn new(scan: MeteredPolygon<'a>, center: usize, backward: bool) -> Result<Self> {
        let before = if backward { scan.next_index(center) } else { scan.prev_index(center) };
        let after = if backward { scan.prev_index(center) } else { scan.next_index(center) };
        let p_before = scan.vertex(before);
        let p_cur = scan.vertex(center);
        let p_after = scan.vertex(after);
        let raw = geom::polar_of(scan.viewpoint(), p_cur)
            .map_err(|_| Error::DegenerateInput("vertex at viewpoint"))?
            .theta;
        Ok(RollingWindow { scan, backward, idx: center, p_before, p_cur, p_after, raw, th: raw })
    }

    pub fn idx(&self) -> usize {
        self.idx
    }

    pub fn point(&self) -> Point {
        self.p_cur
    }

    /// Boundary neighbors of the current vertex in counterclockwise order.
    pub fn ccw_neighbors(&self) -> (Point, Point) {
        if self.backward {
            (self.p_after, self.p_before)
        } else {
            (self.p_before, self.p_after)
        }
    }

    /// Running unwound angle along the walk.
    pub fn theta(&self) -> f64 {
        self.th
    }

    pub fn kind(&self) -> Result<CriticalKind> {
        let (prev, next) = self.ccw_neighbors();
        classify_points(self.scan.viewpoint(), prev, self.p_cur, next, TurnRule::ReflexBoth)
            .map_err(|t| tie_error(self.scan.input(), self.idx, t))
    }

    /// Steps the window one vertex along the walk direction.
    pub fn advance(&mut self) -> Result<()> {
        let new_center = if self.backward {
            self.scan.prev_index(self.idx)
        } else {
            self.scan.next_index(self.idx)
        };
        let new_after = if self.backward {
            self.scan.prev_index(new_center)
        } else {
            self.scan.next_index(new_center)
        };
        let p_new_after = self.scan.vertex(new_after);
        let new_raw = geom::polar_of(self.scan.viewpoint(), self.p_after)
            .map_err(|_| Error::DegenerateInput("vertex at viewpoint"))?
            .theta;
        let d = angle_delta(self.raw, new_raw);
        if d == 0.0 || d == geom::PI || d == -geom::PI {
            let (i, j) = if self.backward { (new_center, self.idx) } else { (self.idx, new_center) };
            return Err(Error::DegeneratePosition { i, j });
        }
        self.th += d;
        self.raw = new_raw;
        self.p_before = self.p_cur;
        self.p_cur = self.p_after;
        self.p_after = p_new_after;
        self.idx = new_center;
        Ok(())
    }
}

/// Number of critical vertices, in one linear pass.
pub fn critical_count(input: &PolygonInput) -> Result<usize> {
    let meter = WorkspaceMeter::new();
    Ok(scan_summary(&input.metered(&meter))?.critical_total)
}

/// Metered variant for callers accounting reads against their own meter.
pub fn critical_count_metered(scan: &MeteredPolygon<'_>) -> Result<usize> {
    Ok(scan_summary(scan)?.critical_total)
}

/// Crossing-number point-in-polygon test.
///
/// `p` must not lie on the boundary; that case is a degenerate position
/// naming the edge it lies on.
pub fn point_in_polygon(input: &PolygonInput, p: Point) -> Result<bool> {
    let n = input.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = input.edge(i);
        if orientation(a, b, p) == Orientation::Collinear
            && p.x >= a.x.min(b.x)
            && p.x <= a.x.max(b.x)
            && p.y >= a.y.min(b.y)
            && p.y <= a.y.max(b.y)
        {
            return Err(Error::DegeneratePosition { i, j: input.next_index(i) });
        }
        let upward = a.y <= p.y && b.y > p.y;
        let downward = a.y > p.y && b.y <= p.y;
        let crosses = (upward && orientation(a, b, p) == Orientation::CounterclockwiseTurn)
            || (downward && orientation(a, b, p) == Orientation::ClockwiseTurn);
        if crosses {
            inside = !inside;
        }
    }
    Ok(inside)
}

fn signed_area_doubled(input: &PolygonInput) -> f64 {
    let n = input.len();
    let mut sum = 0.0;
    for i in 0..n {
        let a = input.vertex(i);
        let b = input.vertex(input.next_index(i));
        sum += a.x * b.y - b.x * a.y;
    }
    sum
}

/// Segments share no point except possibly the named common endpoint.
fn edges_conflict(a1: Point, a2: Point, b1: Point, b2: Point) -> bool {
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
    // Any endpoint of one lying on the other is a conflict too; shared
    // endpoints of adjacent edges are excluded by the caller.
    on(a1, b1, b2) || on(a2, b1, b2) || on(b1, a1, a2) || on(b2, a1, a2)
}

/// Checks the model invariants.
///
/// Non-strict: counterclockwise order and strictly interior viewpoint, in
/// linear time. Strict additionally checks simplicity (quadratic pairwise
/// edge test, meant for tests and fixtures) and general position: no two
/// vertices with equal angle about the viewpoint and no edge collinear
/// with it.
pub fn validate(input: &PolygonInput, strict: bool) -> Result<()> {
    if signed_area_doubled(input) <= 0.0 {
        return Err(Error::NotCcw);
    }
    match point_in_polygon(input, input.viewpoint()) {
        Ok(true) => {}
        Ok(false) => return Err(Error::ViewpointOutside),
        // On-boundary viewpoint is not strictly interior.
        Err(Error::DegeneratePosition { .. }) => return Err(Error::ViewpointOutside),
        Err(e) => return Err(e),
    }
    if !strict {
        return Ok(());
    }

    let n = input.len();
    for i in 0..n {
        let (a1, a2) = input.edge(i);
        for j in i + 1..n {
            if j == i || input.next_index(i) == j || input.next_index(j) == i {
                continue;
            }
            let (b1, b2) = input.edge(j);
            if edges_conflict(a1, a2, b1, b2) {
                return Err(Error::NotSimple { i, j });
            }
        }
        // Adjacent edges may only meet at the shared vertex: reject spikes.
        let j = input.next_index(i);
        let (b1, b2) = input.edge(j);
        if orientation(a1, a2, b2) == Orientation::Collinear {
            let dot = (a1.x - b1.x) * (b2.x - b1.x) + (a1.y - b1.y) * (b2.y - b1.y);
            if dot > 0.0 {
                return Err(Error::NotSimple { i, j });
            }
        }
    }

    let q = input.viewpoint();
    let mut angles: Vec<(f64, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        angles.push((geom::polar_of(q, input.vertex(i))?.theta, i));
    }
    angles.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in angles.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DegeneratePosition { i: w[0].1.min(w[1].1), j: w[0].1.max(w[1].1) });
        }
    }
    for i in 0..n {
        let (a, b) = input.edge(i);
        if orientation(a, b, q) == Orientation::Collinear {
            return Err(Error::DegeneratePosition { i, j: input.next_index(i) });
        }
    }
    Ok(())
}

/// Parses the polygon file format: line 1 is the vertex count, then one
/// `x y` pair per line in counterclockwise order.
pub fn parse_polygon(text: &str) -> Result<Vec<Point>> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or(Error::Parse { line: 1, message: "empty file".into() })?;
    let n: usize = first.trim().parse().map_err(|_| Error::Parse {
        line: 1,
        message: format!("expected vertex count, got {first:?}"),
    })?;
    let mut points = Vec::with_capacity(n);
    for (idx, line) in lines {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let parse = |tok: Option<&str>, line_no: usize| -> Result<f64> {
            let tok = tok.ok_or(Error::Parse { line: line_no, message: "expected `x y`".into() })?;
            tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("bad coordinate {tok:?}"),
            })
        };
        let x = parse(it.next(), line_no)?;
        let y = parse(it.next(), line_no)?;
        if it.next().is_some() {
            return Err(Error::Parse { line: line_no, message: "trailing tokens".into() });
        }
        points.push(Point::new(x, y));
    }
    if points.len() != n {
        return Err(Error::Parse {
            line: points.len() + 1,
            message: format!("expected {n} vertices, found {}", points.len()),
        });
    }
    Ok(points)
}

pub fn format_polygon(points: &[Point]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", points.len());
    for p in points {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

pub fn read_polygon_file(path: &Path) -> Result<Vec<Point>> {
    parse_polygon(&std::fs::read_to_string(path)?)
}

pub fn write_polygon_file(path: &Path, points: &[Point]) -> Result<()> {
    Ok(std::fs::write(path, format_polygon(points))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn square() -> PolygonInput {
        PolygonInput::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(4.0, 0.0),
                Point::new(4.0, 4.0),
                Point::new(0.0, 4.0),
            ],
            Point::new(0.5, 0.5),
        )
        .unwrap()
    }

    #[test]
    fn validate_square_ok() {
        validate(&square(), true).unwrap();
    }

    #[test]
    fn validate_rejects_clockwise() {
        let cw = PolygonInput::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.0, 1.0),
                Point::new(1.0, 1.0),
                Point::new(1.0, 0.0),
            ],
            Point::new(0.5, 0.5),
        )
        .unwrap();
        assert!(matches!(validate(&cw, false), Err(Error::NotCcw)));
    }

    #[test]
    fn validate_rejects_viewpoint_in_notch_void() {
        let notched = corpus::notched_square();
        let input = PolygonInput::new(notched.vertices().to_vec(), Point::new(2.0, 3.0)).unwrap();
        assert!(matches!(validate(&input, false), Err(Error::ViewpointOutside)));
        let input = PolygonInput::new(notched.vertices().to_vec(), Point::new(2.0, 3.5)).unwrap();
        assert!(matches!(validate(&input, false), Err(Error::ViewpointOutside)));
    }

    #[test]
    fn point_in_polygon_basic() {
        let input = square();
        assert!(point_in_polygon(&input, Point::new(2.0, 1.0)).unwrap());
        assert!(!point_in_polygon(&input, Point::new(5.0, 5.0)).unwrap());
        assert!(matches!(
            point_in_polygon(&input, Point::new(2.0, 0.0)),
            Err(Error::DegeneratePosition { .. })
        ));
    }

    #[test]
    fn point_in_polygon_notch_void() {
        let notched = corpus::notched_square();
        assert!(!point_in_polygon(&notched, Point::new(2.0, 3.5)).unwrap());
        assert!(point_in_polygon(&notched, Point::new(2.0, 1.0)).unwrap());
    }

    #[test]
    fn classify_notched_square_corners() {
        let input = corpus::notched_square();
        // Deep notch corners about q = (2, 1).
        assert_eq!(classify_vertex(&input, 4).unwrap(), CriticalKind::CriticalMin); // (2.5, 3)
        assert_eq!(classify_vertex(&input, 5).unwrap(), CriticalKind::CriticalMax); // (1.5, 3)
        for i in [0, 1, 2, 3, 6, 7] {
            assert_eq!(classify_vertex(&input, i).unwrap(), CriticalKind::NotCritical);
        }
    }

    #[test]
    fn paper_literal_rule_flags_the_convex_corner() {
        let input = corpus::notched_square();
        // Under the literal reading the occluding reflex corner (2.5, 3) is
        // missed and the occluded convex corner (1.5, 4) is flagged instead.
        assert_eq!(
            classify_vertex_with(&input, 4, TurnRule::PaperLiteral).unwrap(),
            CriticalKind::NotCritical
        );
        assert_eq!(
            classify_vertex_with(&input, 6, TurnRule::PaperLiteral).unwrap(),
            CriticalKind::CriticalMin
        );
    }

    #[test]
    fn critical_count_examples() {
        assert_eq!(critical_count(&corpus::convex_regular(5)).unwrap(), 0);
        assert_eq!(critical_count(&corpus::notched_square()).unwrap(), 2);
        for t in 1..=4 {
            assert_eq!(critical_count(&corpus::comb(t)).unwrap(), 2 * t);
        }
    }

    #[test]
    fn critical_count_matches_per_vertex_classification() {
        for (_, input) in corpus::fixed_corpus() {
            let by_scan = critical_count(&input).unwrap();
            let by_each = (0..input.len())
                .filter(|&i| classify_vertex(&input, i).unwrap().is_critical())
                .count();
            assert_eq!(by_scan, by_each);
        }
    }

    #[test]
    fn critical_count_read_budget() {
        let input = corpus::notched_square();
        let meter = WorkspaceMeter::new();
        critical_count_metered(&input.metered(&meter)).unwrap();
        let reads = meter.snapshot().vertex_reads;
        assert!(reads <= 3 * input.len() as u64 + 8, "reads = {reads}");
    }

    #[test]
    fn classify_rejects_equal_angles() {
        // Two vertices on the same ray from q.
        let input = PolygonInput::new(
            vec![
                Point::new(1.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(2.0, 2.0),
                Point::new(-1.0, 1.0),
                Point::new(-1.0, -1.0),
            ],
            Point::new(0.0, 0.0),
        )
        .unwrap();
        assert!(matches!(
            classify_vertex(&input, 0),
            Err(Error::DegeneratePosition { .. })
        ));
    }

    #[test]
    fn polygon_format_round_trip() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(4.5, 0.25), Point::new(1.0, 3.0)];
        let text = format_polygon(&pts);
        assert_eq!(parse_polygon(&text).unwrap(), pts);
    }

    #[test]
    fn parse_errors_name_lines() {
        match parse_polygon("2\n0 0\nbad 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_polygon("nope\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn critical_count_at_most_reflex_count_below_n() {
        // Measured empirically, not assumed by any code path.
        use crate::corpus;
        let mut inputs: Vec<PolygonInput> = corpus::fixed_corpus().into_iter().map(|(_, i)| i).collect();
        for seed in 0..30u64 {
            if let Ok(input) = corpus::random_instance(4 + (seed as usize % 60), seed) {
                inputs.push(input);
            }
        }
        for input in &inputs {
            let n = input.len();
            let reflex = (0..n)
                .filter(|&i| {
                    orientation(
                        input.vertex(input.prev_index(i)),
                        input.vertex(i),
                        input.vertex(input.next_index(i)),
                    ) == Orientation::ClockwiseTurn
                })
                .count();
            let c = critical_count(input).unwrap();
            assert!(c <= reflex, "c = {c} > r = {reflex}");
            assert!(reflex < n);
        }
    }

    #[test]
    fn criticals_are_reflex_on_random_instances() {
        use crate::corpus;
        for seed in 0..30u64 {
            let Ok(input) = corpus::random_instance(4 + (seed as usize % 60), seed) else {
                continue;
            };
            for i in 0..input.len() {
                if classify_vertex(&input, i).unwrap().is_critical() {
                    let prev = input.vertex(input.prev_index(i));
                    let next = input.vertex(input.next_index(i));
                    assert_eq!(
                        orientation(prev, input.vertex(i), next),
                        Orientation::ClockwiseTurn,
                        "seed {seed}, vertex {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn inputs_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<PolygonInput>();
        assert_send_sync::<Point>();
        assert_send_sync::<crate::EffectiveFlags>();

        // Separate computations on the same input, each with its own meter.
        let input = crate::corpus::shadow_gallery();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..4)
                .map(|_| {
                    scope.spawn(|| {
                        let mut sink = crate::OutputSink::new();
                        crate::visibility_polygon(&input, &mut sink, crate::Mode::StrictPaper)
                            .map(|stats| (sink.len(), stats.c_effective))
                            .unwrap()
                    })
                })
                .collect();
            let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
            assert!(results.windows(2).all(|w| w[0] == w[1]));
        });
    }

    #[test]
    fn meter_tracks_scalar_peak() {
        let meter = WorkspaceMeter::new();
        {
            let _a = meter.scalars(8);
            let _b = meter.scalars(4);
        }
        let _c = meter.scalars(3);
        let snap = meter.snapshot();
        assert_eq!(snap.scalar_slots_peak, 12);
    }
}
