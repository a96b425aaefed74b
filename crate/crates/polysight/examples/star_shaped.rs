//! A polygon with no critical vertices is star-shaped about the viewpoint:
//! the engine copies the whole boundary and allocates zero flag bits.
//!
//! ```bash
//! cargo run --example star_shaped
//! ```

use polysight::{corpus, oracle, visibility_polygon, Mode, OutputSink};

fn main() {
    let input = corpus::convex_regular(12);
    let mut sink = OutputSink::new();
    let stats = visibility_polygon(&input, &mut sink, Mode::StrictPaper).expect("pipeline runs");

    println!("convex 12-gon: c = {}, flag bits = {}", stats.c, stats.meter.flag_bits);
    println!(
        "output equals input (cyclically): {}",
        oracle::compare_cyclic(sink.points(), input.vertices(), 1e-12)
    );
    println!(
        "reads = {} for n = {} (boundary scanned, classified, copied)",
        stats.meter.vertex_reads, stats.n
    );
}
