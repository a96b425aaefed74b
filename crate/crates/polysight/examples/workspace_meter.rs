//! Shows the workspace meter across a size sweep: input reads grow linearly
//! while flag bits and the scalar peak stay put.
//!
//! ```bash
//! cargo run --release --example workspace_meter
//! ```

use polysight::cli::bench_families;

fn main() {
    let rows = bench_families(&[1_000, 10_000, 100_000], 8).expect("bench runs");
    println!(
        "{:<8} {:>8} {:>4} {:>10} {:>8} {:>10} {:>12}",
        "family", "n", "c", "reads", "reads/n", "flag_bits", "scalar_peak"
    );
    for r in rows {
        println!(
            "{:<8} {:>8} {:>4} {:>10} {:>8.2} {:>10} {:>12}",
            r.family, r.n, r.c, r.vertex_reads, r.reads_per_n, r.flag_bits, r.scalar_slots_peak
        );
    }
}
