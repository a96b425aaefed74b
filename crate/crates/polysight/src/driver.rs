//! Orchestration: run the flag pipeline, then walk the chains between
//! consecutive effective critical vertices and write the visibility polygon
//! to the write-only sink.

use crate::chain::{self, Chain, Emitter};
use crate::effective::{self, EffectiveFlags, Mode};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::polygon::{MeterSnapshot, MeteredPolygon, PolygonInput, RollingWindow, WorkspaceMeter};

/// Append-only result sequence. The algorithm only ever appends; reading
/// happens after the computation, by the caller.
#[derive(Debug, Default)]
pub struct OutputSink {
    points: Vec<Point>,
}

impl OutputSink {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn append(&mut self, p: Point) {
        self.points.push(p);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }
}

/// Counts and meter snapshot of one run.
#[derive(Clone, Debug)]
pub struct RunStats {
    pub n: usize,
    pub c: usize,
    pub c_effective: usize,
    pub meter: MeterSnapshot,
    pub mode: Mode,
    /// Set when an error aborted the run and the sink holds partial output.
    pub partial: bool,
    /// Vertex indices where validated mode disagreed with the oracle.
    pub discrepancies: Vec<usize>,
}

/// Error carrying the stats of the aborted run (with the partial flag set).
#[derive(Debug, thiserror::Error)]
#[error("{error}")]
pub struct DriverError {
    pub error: Error,
    pub stats: RunStats,
}

/// Computes the visibility polygon of the viewpoint and appends it to
/// `sink` in counterclockwise order, starting at the first effective
/// critical vertex (or at the start vertex when there is none).
pub fn visibility_polygon(
    input: &PolygonInput,
    sink: &mut OutputSink,
    mode: Mode,
) -> std::result::Result<RunStats, Box<DriverError>> {
    let meter = WorkspaceMeter::new();
    let scan = input.metered(&meter);
    let _slots = meter.scalars(8);

    let stats_at = |c: usize, c_eff: usize, partial: bool, discrepancies: Vec<usize>| RunStats {
        n: input.len(),
        c,
        c_effective: c_eff,
        meter: meter.snapshot(),
        mode,
        partial,
        discrepancies,
    };

    let flags = match effective::compute_effective_metered(&scan, mode) {
        Ok(flags) => flags,
        Err(Error::PipelineDiscrepancy { indices }) => {
            let stats = stats_at(0, 0, true, indices.clone());
            return Err(Box::new(DriverError {
                error: Error::PipelineDiscrepancy { indices },
                stats,
            }));
        }
        Err(error) => {
            return Err(Box::new(DriverError { error, stats: stats_at(0, 0, true, Vec::new()) }));
        }
    };

    let c = flags.critical_count();
    let c_eff = flags.count_effective();
    match emit_all(&scan, &flags, sink) {
        Ok(()) => Ok(stats_at(c, c_eff, false, Vec::new())),
        Err(error) => Err(Box::new(DriverError { error, stats: stats_at(c, c_eff, true, Vec::new()) })),
    }
}

fn emit_all(scan: &MeteredPolygon<'_>, flags: &EffectiveFlags, sink: &mut OutputSink) -> Result<()> {
    let n = scan.len();
    let scale = chain::chain_scale(scan.input());
    let mut emitter = Emitter::new(sink, scan.meter(), scale);

    if flags.count_effective() == 0 {
        // Star-shaped about the viewpoint: the whole boundary is visible.
        let mut idx = flags.start_index();
        for _ in 0..n {
            let p = scan.vertex(idx);
            emitter.push(p);
            idx = scan.next_index(idx);
        }
        return Ok(());
    }

    // Walk once around from the start vertex collecting the effective
    // criticals in order, emitting each chain as its far end is found.
    let _slots = scan.meter().scalars(12);
    let mut w = RollingWindow::new_forward(*scan, flags.start_index())?;
    let mut rank = 0usize;
    let mut first: Option<usize> = None;
    let mut current: Option<usize> = None;
    let mut chains = 0usize;
    for step in 0..n {
        if step > 0 {
            w.advance()?;
        }
        if !w.kind()?.is_critical() {
            continue;
        }
        let bit = rank;
        rank += 1;
        if !flags.get(bit) {
            continue;
        }
        match current {
            None => {
                first = Some(w.idx());
                current = Some(w.idx());
            }
            Some(start) => {
                chains += 1;
                chain::emit_chain_metered(
                    scan,
                    Chain { start, end: w.idx() },
                    &mut emitter,
                    chains == 1,
                    true,
                )?;
                current = Some(w.idx());
            }
        }
    }
    // Closing chain back to the first effective critical. Its trailing
    // endpoint is the head of the output (or, for a single effective
    // critical, the head of this same chain), so it is not re-emitted.
    let start = current.expect("count_effective > 0");
    let end = first.expect("count_effective > 0");
    chains += 1;
    chain::emit_chain_metered(scan, Chain { start, end }, &mut emitter, chains == 1, false)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::oracle;

    fn run(input: &PolygonInput, mode: Mode) -> (Vec<Point>, RunStats) {
        let mut sink = OutputSink::new();
        let stats = visibility_polygon(input, &mut sink, mode).unwrap();
        (sink.into_points(), stats)
    }

    #[test]
    fn convex_square_copies_boundary() {
        let input = PolygonInput::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(4.0, 0.0),
                Point::new(4.0, 4.0),
                Point::new(0.0, 4.0),
            ],
            Point::new(1.0, 1.0),
        )
        .unwrap();
        let (out, stats) = run(&input, Mode::StrictPaper);
        assert!(oracle::compare_cyclic(&out, input.vertices(), 1e-12));
        assert_eq!(stats.c, 0);
        assert_eq!(stats.c_effective, 0);
        assert_eq!(stats.meter.flag_bits, 0);
        // Output starts at the driver's start vertex, rotated but equal.
        assert_eq!(out.len(), 4);
    }

    #[test]
    fn notched_square_matches_fixture() {
        let input = corpus::notched_square();
        let (out, stats) = run(&input, Mode::StrictPaper);
        assert!(oracle::compare_cyclic(&out, &corpus::notched_square_expected(), 1e-9));
        assert_eq!(stats.c, 2);
        assert_eq!(stats.c_effective, 2);
        assert_eq!(stats.meter.flag_bits, 2);
    }

    #[test]
    fn spiral_runs_the_single_chain_path() {
        let input = corpus::spiral(2);
        let (out, stats) = run(&input, Mode::Validated);
        assert_eq!(stats.c_effective, 1);
        let expect = oracle::brute_force_visibility(&input).unwrap();
        assert!(oracle::compare_cyclic(&out, &expect, 1e-9));
    }

    #[test]
    fn fixed_corpus_matches_oracle() {
        for (name, input) in corpus::fixed_corpus() {
            let (out, _) = run(&input, Mode::StrictPaper);
            let expect = oracle::brute_force_visibility(&input).unwrap();
            assert!(
                oracle::compare_cyclic(&out, &expect, 1e-9),
                "{name}: engine {out:?} vs oracle {expect:?}"
            );
        }
    }

    #[test]
    fn output_is_simple_ccw_and_contains_viewpoint() {
        for (name, input) in corpus::fixed_corpus() {
            let (out, _) = run(&input, Mode::StrictPaper);
            assert!(oracle::winds_once_ccw(&out, input.viewpoint()), "{name}");
            assert!(oracle::signed_area(&out) > 0.0, "{name}");
            let area_in = oracle::signed_area(input.vertices());
            assert!(oracle::signed_area(&out) <= area_in + 1e-9, "{name}");
            let vis = crate::PolygonInput::new(out, input.viewpoint()).unwrap();
            assert!(crate::polygon::point_in_polygon(&vis, input.viewpoint()).unwrap(), "{name}");
        }
    }

    #[test]
    fn every_output_point_lies_on_the_input_boundary() {
        // Both chain vertices and window endpoints are boundary points.
        for (name, input) in corpus::fixed_corpus() {
            let (out, _) = run(&input, Mode::StrictPaper);
            let mut scale = 1.0f64;
            for v in input.vertices() {
                scale = scale.max(v.x.abs()).max(v.y.abs());
            }
            for p in &out {
                let on_boundary = input.edges().any(|(a, b)| {
                    let ex = b.x - a.x;
                    let ey = b.y - a.y;
                    let len2 = ex * ex + ey * ey;
                    let u = (((p.x - a.x) * ex + (p.y - a.y) * ey) / len2).clamp(0.0, 1.0);
                    let foot = Point::new(a.x + u * ex, a.y + u * ey);
                    foot.distance(*p) <= 1e-9 * scale
                });
                assert!(on_boundary, "{name}: {p:?} is off the boundary");
            }
        }
    }

    #[test]
    fn all_visible_vertices_appear_in_output() {
        for (name, input) in corpus::fixed_corpus() {
            let (out, _) = run(&input, Mode::StrictPaper);
            for i in 0..input.len() {
                let v = input.vertex(i);
                if oracle::visible_from(&input, v).unwrap() {
                    let present = out.iter().any(|p| p.distance(v) <= 1e-9 * 20.0);
                    assert!(present, "{name}: visible vertex {i} missing");
                }
            }
        }
    }

    #[test]
    fn output_writes_match_sink_length() {
        for (name, input) in corpus::fixed_corpus() {
            let mut sink = OutputSink::new();
            let stats = visibility_polygon(&input, &mut sink, Mode::StrictPaper).unwrap();
            assert_eq!(stats.meter.output_writes as usize, sink.len(), "{name}");
        }
    }

    #[test]
    fn runs_are_bitwise_idempotent() {
        let input = corpus::shadow_gallery();
        let (a, _) = run(&input, Mode::StrictPaper);
        let (b, _) = run(&input, Mode::StrictPaper);
        assert_eq!(a.len(), b.len());
        for (pa, pb) in a.iter().zip(b.iter()) {
            assert!(pa.x.to_bits() == pb.x.to_bits() && pa.y.to_bits() == pb.y.to_bits());
        }
    }

    #[test]
    fn aborted_runs_carry_the_partial_flag() {
        // Two vertices share the same angle about the viewpoint, so the
        // pipeline hits a degenerate position.
        let input = PolygonInput::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(4.0, 0.0),
                Point::new(4.0, 4.0),
                Point::new(2.0, 2.0),
                Point::new(0.0, 4.0),
            ],
            Point::new(1.0, 1.0),
        )
        .unwrap();
        let mut sink = OutputSink::new();
        let err = visibility_polygon(&input, &mut sink, Mode::StrictPaper).unwrap_err();
        assert!(matches!(err.error, crate::Error::DegeneratePosition { .. }));
        assert!(err.stats.partial);
    }

    #[test]
    fn workspace_stays_small() {
        for (name, input) in corpus::fixed_corpus() {
            let (_, stats) = run(&input, Mode::StrictPaper);
            assert_eq!(stats.meter.flag_bits as usize, stats.c, "{name}");
            assert!(stats.meter.scalar_slots_peak <= 64, "{name}: {}", stats.meter.scalar_slots_peak);
            assert!(
                stats.meter.vertex_reads <= 24 * input.len() as u64 + 64,
                "{name}: reads {}",
                stats.meter.vertex_reads
            );
        }
    }
}
