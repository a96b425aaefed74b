//! Computes the visibility polygon of the notched-square fixture and prints
//! the result next to the brute-force oracle.
//!
//! ```bash
//! cargo run --example notched_square
//! ```

use polysight::{corpus, oracle, visibility_polygon, Mode, OutputSink};

fn main() {
    let input = corpus::notched_square();
    let q = input.viewpoint();
    println!("polygon: {} vertices, viewpoint ({}, {})", input.len(), q.x, q.y);

    let mut sink = OutputSink::new();
    let stats = visibility_polygon(&input, &mut sink, Mode::StrictPaper).expect("pipeline runs");
    let points = sink.into_points();

    println!("\nvisibility polygon ({} points):", points.len());
    for p in &points {
        println!("  ({}, {})", p.x, p.y);
    }

    let expect = oracle::brute_force_visibility(&input).expect("oracle runs");
    println!(
        "\nmatches the quadratic oracle: {}",
        oracle::compare_cyclic(&points, &expect, 1e-9)
    );
    println!(
        "critical vertices: {} total, {} effective (visible)",
        stats.c, stats.c_effective
    );
    println!(
        "workspace: {} flag bits + peak {} scalars, {} input reads for n = {}",
        stats.meter.flag_bits, stats.meter.scalar_slots_peak, stats.meter.vertex_reads, stats.n
    );
}
