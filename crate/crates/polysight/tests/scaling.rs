//! Scaling sanity: the quadratic oracle slows down ~4x when the input
//! doubles, while the constrained engine's read count doubles.

use std::time::Instant;

use polysight::effective::Mode;
use polysight::{corpus, oracle, visibility_polygon, OutputSink};

fn oracle_seconds(n: usize) -> f64 {
    let input = corpus::comb_sized(8, n);
    // Warm once, then take the best of three to tame scheduler noise.
    let mut best = f64::INFINITY;
    for _ in 0..3 {
        let started = Instant::now();
        let out = oracle::brute_force_visibility(&input).unwrap();
        assert!(out.len() >= 3);
        best = best.min(started.elapsed().as_secs_f64());
    }
    best
}

#[test]
fn oracle_wall_time_scales_quadratically() {
    let t1 = oracle_seconds(1_500);
    let t2 = oracle_seconds(3_000);
    let ratio = t2 / t1;
    println!("oracle wall time: {t1:.3}s -> {t2:.3}s (ratio {ratio:.2}, quadratic baseline)");
    assert!(ratio > 2.2 && ratio < 8.0, "ratio {ratio:.2} out of the quadratic band");
}

#[test]
fn engine_reads_scale_linearly() {
    let reads = |n: usize| {
        let input = corpus::comb_sized(8, n);
        let mut sink = OutputSink::new();
        let stats = visibility_polygon(&input, &mut sink, Mode::StrictPaper).unwrap();
        stats.meter.vertex_reads as f64
    };
    let r1 = reads(20_000);
    let r2 = reads(40_000);
    let ratio = r2 / r1;
    println!("engine reads: {r1} -> {r2} (ratio {ratio:.3})");
    assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio:.3} not linear");
}
